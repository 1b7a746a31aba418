"""FastAPI front end: every endpoint is a stateless wrapper over the
core package, with plain-text payloads carried inside JSON fields so
the file formats stay the single source of truth."""

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import closure, formats, gf, grp, iso, para, repro, trans, unital
from ..fingerprint import match_name
from . import schemas

REPRO_CHECKS = {
    "counts": lambda q: repro.counts(q),
    "table1": lambda q: repro.table1(),
    "table2": lambda q: repro.table2(),
    "leonids": lambda q: repro.leonids(),
}


def create_app():
    app = FastAPI(title="sl2unitals", description=__doc__)

    @app.exception_handler(ValueError)
    async def _domain_error(request, exc):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/field/info", response_model=schemas.FieldInfoResponse)
    def field_info(req: schemas.FieldInfoRequest):
        F = gf.field(req.p, req.e)
        return schemas.FieldInfoResponse(
            q=F.q,
            modulus=F.poly_str(),
            squares=sorted(x for x in range(F.q) if F.is_square(x)),
        )

    @app.post("/group/info", response_model=schemas.GroupInfoResponse)
    def group_info(req: schemas.GroupInfoRequest):
        G = grp.sl2(req.q)
        universe = grp.short_blocks(req.q)
        return schemas.GroupInfoResponse(
            order=G.order,
            sylow_count=len(universe.sylows),
            short_blocks=len(universe.blocks),
            ambient_order=grp.ar_order(G),
        )

    @app.post("/para/generate", response_model=schemas.TextPayload)
    def para_generate(req: schemas.ParaGenRequest):
        pi = formats.resolve_parallelism(req.q, req.kind)
        return schemas.TextPayload(text=formats.dumps_para(req.q, pi))

    @app.post("/para/verify", response_model=schemas.VerifyResponse)
    def para_verify(req: schemas.TextPayload):
        q, pi = formats.loads_para(req.text)
        ok, problems = para.verify_parallelism(grp.short_blocks(q), pi)
        return schemas.VerifyResponse(ok=ok, problems=problems)

    @app.post("/para/stabilizer", response_model=schemas.StabilizerResponse)
    def para_stabilizer(req: schemas.TextPayload):
        q, pi = formats.loads_para(req.text)
        order, orbit = para.stabilizer_order_by_orbit(grp.short_blocks(q), pi)
        return schemas.StabilizerResponse(order=order, orbit=orbit)

    @app.post("/close", response_model=schemas.TextPayload)
    def close_unital(req: schemas.CloseRequest):
        U = formats.resolve_unital(req.unital)
        q = U.group.q
        if req.kind is not None:
            pi = formats.resolve_parallelism(q, req.kind)
        elif req.para_text is not None:
            file_q, pi = formats.loads_para(req.para_text)
            if file_q != q:
                raise formats.FormatError(f"parallelism is for q={file_q}, unital for q={q}")
        else:
            raise formats.FormatError("need kind or para_text")
        D = closure.close(U, pi)
        return schemas.TextPayload(text=formats.dumps_blocks(D))

    @app.post("/design/verify", response_model=schemas.VerifyResponse)
    def design_verify(req: schemas.DesignVerifyRequest):
        D = formats.loads_blocks(req.text)
        ok, problems = closure.verify_design(D, req.n)
        return schemas.VerifyResponse(ok=ok, problems=problems)

    @app.post("/iso/aut", response_model=schemas.AutResponse)
    def iso_aut(req: schemas.TextPayload):
        D = formats.loads_blocks(req.text)
        _, order = iso.automorphisms(D)
        return schemas.AutResponse(order=order)

    @app.post("/iso/compare", response_model=schemas.CompareResponse)
    def iso_compare(req: schemas.CompareRequest):
        D1 = formats.loads_blocks(req.first)
        D2 = formats.loads_blocks(req.second)
        answer, _ = iso.isomorphic(D1, D2)
        return schemas.CompareResponse(isomorphic=answer)

    @app.post("/trans/report", response_model=schemas.TransReportResponse)
    def trans_report(req: schemas.TransReportRequest):
        U = formats.resolve_unital(req.unital)
        q = U.group.q
        pi = formats.resolve_parallelism(q, req.kind)
        auts = unital.aut_affine(U)
        entries = []
        for s in range(q + 1):
            rep = trans.translations_at_infinity(U, pi, s, auts)
            entries.append(
                schemas.TranslationEntry(
                    center=rep.center,
                    order=rep.order,
                    structure=match_name(rep.fingerprint),
                    is_translation_center=rep.is_translation_center,
                )
            )
        return schemas.TransReportResponse(reports=entries)

    @app.get("/repro/{check}", response_model=schemas.ReproResponse)
    def repro_check(check: str, q: int = 4):
        if check not in REPRO_CHECKS:
            raise formats.FormatError(f"unknown check {check!r}")
        ok, lines = REPRO_CHECKS[check](q)
        return schemas.ReproResponse(ok=ok, lines=lines)

    return app


app = create_app()
