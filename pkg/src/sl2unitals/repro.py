"""One-shot reproduction checks with PASS/FAIL lines.

Each check recomputes one landscape-scale fact from scratch (module
catalog caches the shared heavy parts within a process) and diffs it
against the frozen expected values; the CLI prints the lines and turns
the overall boolean into an exit code.
"""

from . import catalog, grp, iso, para, trans
from .fingerprint import match_name

EXPECTED_PARALLELISMS = {2: 2, 3: 26, 4: 182, 5: 122}

EXPECTED_ORBIT_SIZES = {
    "H": (1, 1, 5, 25, 30, 60, 60),
    "E": (1, 1, 5, 5, 6, 20, 24, 60, 60),
}

EXPECTED_GROUPS = {
    "H.pi2": (40, "C4:D5"),
    "H.pi4": (48, "C4:A4"),
    "H.pi5": (240, "C4:(A4xC5)"),
    "H.pi6": (20, "C5:C4"),
    "H.pi7": (20, "C5:C4"),
    "E.pi1": (10, "D5"),
    "E.pi2": (40, "C4:D5"),
    "E.pi3": (12, "A4"),
    "E.pi4": (48, "C4:A4"),
    "E.pi5": (48, "C4:A4"),
    "E.pi6": (4, "C4"),
    "E.pi7": (4, "C4"),
}

# closures with a known translation count: total nontrivial, group name
EXPECTED_TRANSLATIONS = {
    "H.pi2": (1, "C2"),
    "E.pi2": (1, "C2"),
    "H.pi4": (3, "C2xC2"),
    "H.pi5": (3, "C2xC2"),
    "E.pi3": (3, "C2xC2"),
    "E.pi4": (3, "C2xC2"),
    "E.pi5": (3, "C2xC2"),
}


def _verdict(ok):
    return "PASS" if ok else "FAIL"


def counts(q=4, budget=None):
    universe = grp.short_blocks(q)
    found = len(para.enumerate_parallelisms(universe, budget=budget))
    want = EXPECTED_PARALLELISMS.get(q)
    ok = found == want
    return ok, [f"parallelisms: {found} {_verdict(ok)} (expected {want})"]


def table1():
    land = catalog.landscape()
    lines = []
    ok = True
    for tag, orbits in zip(catalog.TAGS, land.orbits):
        sizes = tuple(sorted(len(o) for o in orbits))
        good = sizes == EXPECTED_ORBIT_SIZES[tag]
        ok &= good
        lines.append(f"orbit sizes under aut{tag}: {list(sizes)} {_verdict(good)}")
    return ok, lines


def table2():
    lines = []
    ok = True
    for label in catalog.LEONIDS:
        order, name = catalog.group_profile(label)
        want = EXPECTED_GROUPS[label]
        good = (order, name) == want
        ok &= good
        lines.append(f"{label} automorphisms {order} {name} {_verdict(good)}")
    return ok, lines


def leonids():
    lines = []
    certs = {label: catalog.certificate(label) for label in catalog.SIXTEEN}
    distinct = len(set(certs.values()))
    ok = distinct == len(catalog.SIXTEEN)
    lines.append(f"closure types: {distinct} pairwise distinct {_verdict(ok)}")
    fixed = sum(
        iso.block_stabilizer_check(catalog.closure_of(l), catalog.closure_of(l).infinity)
        for l in catalog.LEONIDS
    )
    good = fixed == len(catalog.LEONIDS)
    ok &= good
    lines.append(f"late block fixed by every automorphism: {fixed}/12 {_verdict(good)}")
    for label in catalog.LEONIDS:
        reports = trans.all_translations(catalog.closure_of(label))
        total = sum(r.order - 1 for r in reports)
        names = ", ".join(
            f"center {r.center} {match_name(r.fingerprint)}" for r in reports
        )
        if label in EXPECTED_TRANSLATIONS:
            want_n, want_name = EXPECTED_TRANSLATIONS[label]
            good = total == want_n and all(
                match_name(r.fingerprint) == want_name for r in reports
            )
            ok &= good
            lines.append(
                f"{label} translations {total} ({names}) {_verdict(good)}"
            )
        else:
            lines.append(f"{label} translations {total} REPORT (no reference value)")
    return ok, lines
