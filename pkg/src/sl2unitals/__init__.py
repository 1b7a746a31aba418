"""Exact computational engine for affine SL(2,q) unitals.

Subpackages cover finite fields (gf), the group SL(2,q) with its ambient
automorphism-times-translation group (grp), affine unitals (unital),
parallelisms of short blocks (para), closures to unital designs (closure),
a design isomorphism engine (iso) and translation groups (trans).  The
service subpackage wraps everything in a FastAPI app; cli is a thin client.
"""

__version__ = "0.1.0"
