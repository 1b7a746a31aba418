"""Command-line front end.

Thin orchestration only: parse arguments, call the package, print, map
failures to exit codes.  0 = success, 1 = verification failure (with
the witness on stdout), 2 = usage error, 3 = budget or size limit hit.
"""

import functools
import sys

import click

from . import closure, formats, gf, grp, iso, para, repro, trans, unital
from .exactcover import BudgetExceededError
from .fingerprint import match_name
from .grp import GroupTooLargeError


def guarded(fn):
    """Exit-code mapping for everything past argument parsing."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (BudgetExceededError, GroupTooLargeError) as exc:
            click.echo(f"budget: {exc}")
            sys.exit(3)
        except ValueError as exc:
            click.echo(f"failure: {exc}")
            sys.exit(1)

    return wrapper


def _resolve_unital(spec):
    try:
        return formats.resolve_unital(spec)
    except ValueError as exc:
        raise click.BadParameter(str(exc))


def _resolve_para(q, arg):
    """A kind name (flat, odd, pi3, ...) or a .para file path."""
    try:
        return formats.resolve_parallelism(q, arg)
    except ValueError:
        pass
    try:
        file_q, pi = formats.loads_para(formats.read_text(arg))
    except OSError as exc:
        raise click.BadParameter(f"{arg!r} is neither a kind name nor a readable file ({exc})")
    if file_q != q:
        raise click.BadParameter(f"{arg} is for q={file_q}, unital has q={q}")
    return pi


@click.group()
def main():
    """Exact computations for affine SL(2,q)-unitals and their closures."""


# -- field --


@main.group()
def field():
    """Finite field helpers."""


@field.command("info")
@click.option("--p", type=int, required=True, help="characteristic")
@click.option("--e", type=int, default=1, show_default=True, help="extension degree")
@guarded
def field_info(p, e):
    F = gf.field(p, e)
    click.echo(f"GF({F.q}), modulus {F.poly_str()}")
    click.echo("squares: " + " ".join(str(x) for x in range(F.q) if F.is_square(x)))


# -- group --


@main.group()
def group():
    """SL(2,q) and its ambient automorphism group."""


@group.command("info")
@click.option("--q", type=int, required=True)
@guarded
def group_info(q):
    G = grp.sl2(q)
    universe = grp.short_blocks(q)
    click.echo(f"SL(2,{q}) order {G.order}")
    click.echo(f"ambient group order {grp.ar_order(G)}")
    click.echo(f"{len(universe.sylows)} Sylow subgroups of order {q}")
    click.echo(f"{len(universe.blocks)} short blocks")


# -- unital --


@main.group("unital")
def unital_grp():
    """Affine unital search and classification."""


@unital_grp.command("search")
@click.option("--q", type=int, required=True)
@click.option("--s", "s_mode", type=click.Choice(["cyclic", "index"]), default="cyclic",
              show_default=True, help="pick S as the canonical cyclic subgroup, or by "
              "position among all order-(q+1) subgroups (see --s-index)")
@click.option("--s-index", type=int, default=0, show_default=True,
              help="which subgroup to take under --s index")
@click.option("--budget", type=int, default=None, help="search node budget")
@guarded
def unital_search(q, s_mode, s_index, budget):
    G = grp.sl2(q)
    if s_mode == "cyclic":
        S = unital.canonical_S(q)
    else:
        subs = unital.subgroups_of_order_qplus1(G)
        if not 0 <= s_index < len(subs):
            raise click.BadParameter(f"--s-index out of range, {len(subs)} subgroups exist")
        S = subs[s_index]
    sols = unital.search_D_sets(G, S, budget=budget)
    click.echo(f"solutions: {len(sols)}")
    classes = unital.classify_solutions(G, S, sols)
    click.echo(f"isomorphism classes: {len(classes)}")
    for ci, cls in enumerate(classes):
        click.echo(
            f"class {ci}: {cls['n_solutions']} solutions, automorphisms {cls['aut_order']}, "
            f"representative {cls['rep']}"
        )


# -- para --


@main.group("para")
def para_grp():
    """Parallelisms of the short-block universe."""


@para_grp.command("gen")
@click.option("--q", type=int, required=True)
@click.option("--kind", required=True,
              help="flat | natural | odd | odd-prime | sq | sq-inv, or pi1..pi7 at q=4")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="output path [default: q<q>-<kind>.para]")
@guarded
def para_gen(q, kind, out):
    try:
        pi = formats.resolve_parallelism(q, kind)
    except ValueError as exc:
        raise click.BadParameter(str(exc))
    path = out or f"q{q}-{kind}.para"
    formats.write_text(path, formats.dumps_para(q, pi))
    click.echo(path)


@para_grp.command("verify")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@guarded
def para_verify(file):
    q, pi = formats.loads_para(formats.read_text(file))
    ok, problems = para.verify_parallelism(grp.short_blocks(q), pi)
    if not ok:
        for line in problems:
            click.echo(line)
        sys.exit(1)
    click.echo(f"ok: parallelism over SL(2,{q}), {len(pi.classes)} classes")


@para_grp.command("enum")
@click.option("--q", type=int, required=True)
@click.option("--budget", type=int, default=None, help="search node budget per phase")
@guarded
def para_enum(q, budget):
    found = para.enumerate_parallelisms(grp.short_blocks(q), budget=budget)
    click.echo(f"parallelisms: {len(found)}")


@para_grp.command("stab")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@guarded
def para_stab(file):
    q, pi = formats.loads_para(formats.read_text(file))
    order, orbit = para.stabilizer_order_by_orbit(grp.short_blocks(q), pi)
    click.echo(f"stabilizer order {order} (ambient orbit {orbit})")


@para_grp.command("orbits")
@click.option("--group", "group_name", type=click.Choice(["autH", "autE", "AR"]),
              default="AR", show_default=True)
@click.argument("files", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@guarded
def para_orbits(group_name, files):
    loaded = [formats.loads_para(formats.read_text(f)) for f in files]
    qs = {q for q, _ in loaded}
    if len(qs) != 1:
        raise click.BadParameter(f"files mix orders {sorted(qs)}")
    q = qs.pop()
    universe = grp.short_blocks(q)
    if group_name == "AR":
        ars = None  # orbit_bfs walks the full ambient group from generators
    else:
        if q != 4:
            raise click.BadParameter(f"--group {group_name} is an order-4 group")
        types = unital.affine_types(4)
        ars = unital.aut_affine(types[0 if group_name == "autH" else 1])
    paras = [pi for _, pi in loaded]
    remaining = list(range(len(paras)))
    oi = 0
    while remaining:
        i = remaining[0]
        orb = para.orbit_bfs(universe, paras[i]) if ars is None else para.orbit(
            universe, paras[i], ars
        )
        members = [j for j in remaining if paras[j] in orb]
        click.echo(f"orbit {oi}: " + " ".join(files[j] for j in members))
        remaining = [j for j in remaining if j not in members]
        oi += 1


# -- close / design --


@main.command("close")
@click.argument("unital_spec", metavar="UNITAL")
@click.argument("para_arg", metavar="PARA")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@guarded
def close_cmd(unital_spec, para_arg, out):
    """Close UNITAL (like 3, 4H, 4E) along PARA (kind name or .para file)."""
    U = _resolve_unital(unital_spec)
    pi = _resolve_para(U.group.q, para_arg)
    D = closure.close(U, pi)
    stem = para_arg.rsplit("/", 1)[-1].removesuffix(".para")
    path = out or f"{unital_spec}-{stem}.blocks"
    formats.write_text(path, formats.dumps_blocks(D))
    click.echo(path)


@main.group("design")
def design_grp():
    """Generic block designs from .blocks files."""


@design_grp.command("verify")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--n", type=int, required=True, help="unital order to check against")
@guarded
def design_verify(file, n):
    D = formats.loads_blocks(formats.read_text(file))
    ok, problems = closure.verify_design(D, n)
    if not ok:
        for line in problems:
            click.echo(line)
        sys.exit(1)
    click.echo(f"ok: 2-({D.v}, {n + 1}, 1) design")


# -- iso --


@main.group("iso")
def iso_grp():
    """Automorphisms and isomorphism of designs."""


@iso_grp.command("aut")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@guarded
def iso_aut(file):
    D = formats.loads_blocks(formats.read_text(file))
    gens, order = iso.automorphisms(D)
    click.echo(f"automorphism group order {order} ({len(gens)} generators)")


@iso_grp.command("cmp")
@click.argument("first", type=click.Path(exists=True, dir_okay=False))
@click.argument("second", type=click.Path(exists=True, dir_okay=False))
@guarded
def iso_cmp(first, second):
    D1 = formats.loads_blocks(formats.read_text(first))
    D2 = formats.loads_blocks(formats.read_text(second))
    answer, _ = iso.isomorphic(D1, D2)
    click.echo("isomorphic" if answer else "not isomorphic")


@iso_grp.command("blockfix")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--block", default="last", show_default=True,
              help="index into the canonical block order, or 'last'")
@guarded
def iso_blockfix(file, block):
    if block != "last":
        try:
            block = int(block)
        except ValueError:
            raise click.BadParameter(f"--block must be an index or 'last', got {block!r}")
    D = formats.loads_blocks(formats.read_text(file))
    bi = len(D.blocks) - 1 if block == "last" else block
    fixed = iso.block_stabilizer_check(D, bi)
    click.echo(f"block {bi} {'fixed' if fixed else 'moved'} by the automorphism group")


# -- trans --


@main.group("trans")
def trans_grp():
    """Translations of closed unitals."""


@trans_grp.command("report")
@click.argument("unital_spec", metavar="UNITAL")
@click.argument("para_arg", metavar="PARA")
@guarded
def trans_report(unital_spec, para_arg):
    """Translations with centers at infinity, per parallel class."""
    U = _resolve_unital(unital_spec)
    q = U.group.q
    pi = _resolve_para(q, para_arg)
    auts = unital.aut_affine(U)
    total = 0
    for s in range(q + 1):
        rep = trans.translations_at_infinity(U, pi, s, auts)
        total += rep.order - 1
        mark = " (translation center)" if rep.is_translation_center else ""
        click.echo(
            f"center {rep.center}: order {rep.order} {match_name(rep.fingerprint)}{mark}"
        )
    click.echo(f"nontrivial translations at infinity: {total}")


@trans_grp.command("all")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@guarded
def trans_all(file):
    """Sweep every point of a closed design in a .blocks file."""
    D = formats.loads_blocks(formats.read_text(file))
    reports = trans.all_translations(D)
    for rep in reports:
        mark = " (translation center)" if rep.is_translation_center else ""
        click.echo(f"center {rep.center}: order {rep.order} {match_name(rep.fingerprint)}{mark}")
    click.echo(f"nontrivial translations: {sum(r.order - 1 for r in reports)}")


# -- repro / serve --


@main.command("repro")
@click.argument("check", type=click.Choice(["counts", "table1", "table2", "leonids"]))
@click.option("--q", type=int, default=4, show_default=True, help="order for counts")
@click.option("--budget", type=int, default=None)
@guarded
def repro_cmd(check, q, budget):
    """Recompute a landscape result and diff it against frozen values."""
    if check == "counts":
        ok, lines = repro.counts(q, budget=budget)
    else:
        ok, lines = {"table1": repro.table1, "table2": repro.table2, "leonids": repro.leonids}[
            check
        ]()
    for line in lines:
        click.echo(line)
    sys.exit(0 if ok else 1)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
