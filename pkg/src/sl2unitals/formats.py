"""Plain-text exchange formats.

Two line-oriented formats, both starting with a ``#format 1`` marker:
``.blocks`` carries a design (header ``v=<points> b=<blocks>``, one
block per line as ascending point indices, lines sorted), ``.para``
carries a parallelism over the short-block universe (header
``q=<q> classes=<n>``, then ``class <i>:`` sections listing each
member block by its point list, self-contained).  Readers validate
enough to give a usable error before any math runs.
"""

from . import grp
from .closure import Design
from .para import Parallelism

MARKER = "#format 1"


class FormatError(ValueError):
    pass


def _body(text, what):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != MARKER:
        raise FormatError(f"{what}: missing {MARKER!r} marker line")
    return lines[1:]


def _fields(line, *keys):
    parts = line.split()
    if len(parts) != len(keys) or any(
        not p.startswith(k + "=") for p, k in zip(parts, keys)
    ):
        raise FormatError(f"bad header {line!r}, expected {' '.join(k + '=<int>' for k in keys)}")
    try:
        return [int(p.split("=", 1)[1]) for p in parts]
    except ValueError:
        raise FormatError(f"non-integer value in header {line!r}") from None


def dumps_blocks(D):
    rows = sorted(" ".join(map(str, b)) for b in D.blocks)
    head = [MARKER, f"v={D.v} b={len(D.blocks)}"]
    return "\n".join(head + rows) + "\n"


def loads_blocks(text):
    lines = _body(text, "blocks file")
    if not lines:
        raise FormatError("blocks file: missing header")
    v, b = _fields(lines[0], "v", "b")
    if len(lines) - 1 != b:
        raise FormatError(f"expected {b} block lines, found {len(lines) - 1}")
    blocks = []
    for ln in lines[1:]:
        try:
            row = tuple(int(x) for x in ln.split())
        except ValueError:
            raise FormatError(f"bad block line {ln!r}") from None
        if list(row) != sorted(set(row)):
            raise FormatError(f"block line not ascending distinct points: {ln!r}")
        if row and (row[0] < 0 or row[-1] >= v):
            raise FormatError(f"point out of range in {ln!r}")
        blocks.append(row)
    return Design(v, blocks)


def dumps_para(q, pi):
    universe = grp.short_blocks(q)
    out = [MARKER, f"q={q} classes={len(pi.classes)}"]
    for ci, cls in enumerate(pi.classes):
        out.append(f"class {ci}:")
        out.extend(" ".join(map(str, universe.blocks[bi])) for bi in cls)
    return "\n".join(out) + "\n"


def loads_para(text):
    lines = _body(text, "para file")
    if not lines:
        raise FormatError("para file: missing header")
    q, n_classes = _fields(lines[0], "q", "classes")
    universe = grp.short_blocks(q)
    classes = []
    current = None
    for ln in lines[1:]:
        if ln.startswith("class ") and ln.endswith(":"):
            current = []
            classes.append(current)
            continue
        if current is None:
            raise FormatError(f"block line before any class header: {ln!r}")
        try:
            pts = tuple(sorted(int(x) for x in ln.split()))
        except ValueError:
            raise FormatError(f"bad block line {ln!r}") from None
        bi = universe.index.get(pts)
        if bi is None:
            raise FormatError(f"not a short block of SL(2,{q}): {ln!r}")
        current.append(bi)
    if len(classes) != n_classes:
        raise FormatError(f"expected {n_classes} classes, found {len(classes)}")
    return q, Parallelism(classes)


def write_text(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def read_text(path):
    with open(path) as fh:
        return fh.read()


# -- tiny string conventions used by the CLI and the service --


def resolve_unital(spec):
    """Affine unital from a specifier like "3", "4H" or "4E": the order
    plus a tag picking the isomorphism type when there are several
    (most symmetric first: H, then E)."""
    from . import unital  # late import, pulls in the search machinery

    s = spec.strip()
    i = 0
    while i < len(s) and s[i].isdigit():
        i += 1
    if i == 0:
        raise FormatError(f"unital specifier needs a leading order: {spec!r}")
    q, tag = int(s[:i]), s[i:].upper()
    types = unital.affine_types(q)
    if not tag:
        if len(types) > 1:
            raise FormatError(f"order {q} has {len(types)} types, add a tag like {q}H")
        return types[0]
    tags = "HE"
    if tag not in tags or tags.index(tag) >= len(types):
        raise FormatError(f"unknown unital specifier {spec!r}")
    return types[tags.index(tag)]


def resolve_parallelism(q, name):
    """Parallelism from a kind name; accepts the constructed kinds at
    any order and the orbit names pi1..pi7 at q = 4."""
    if q == 4 and name.startswith("pi"):
        from . import catalog

        named = catalog.landscape().named
        if name not in named:
            raise FormatError(f"unknown parallelism name {name!r}")
        return named[name]
    from . import para

    return para.named_parallelism(q, name)
