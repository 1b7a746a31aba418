"""Arithmetic for small finite fields GF(p^e).

Field elements are plain ints in ``range(q)``: the base-p digit expansion
of a polynomial over GF(p), lowest degree first.  Every field carries a
fixed monic modulus, chosen deterministically (see ``_find_modulus``), so
equal parameters always give identical element codes.

Multiplication runs on discrete-log tables, addition on a dense table for
small q and digit arithmetic above that.  Fields are capped at 2^16
elements; everything here is meant for exhaustive desk-scale computation,
not for cryptographic sizes.
"""

from functools import lru_cache

FIELD_MAX = 1 << 16
_ADD_TABLE_MAX = 1 << 10


class FieldError(ValueError):
    pass


class NotPrimeError(FieldError):
    """Raised when the requested characteristic is not prime."""


class FieldTooLargeError(FieldError):
    """Raised when p^e exceeds the supported bound."""


class NotSquareOrderError(FieldError):
    """Raised when an index-2 subfield is requested but the degree is odd."""


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- polynomial helpers over GF(p), coefficient tuples low degree first --


def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(tuple(out))


def _poly_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _poly_trim(tuple(x % p for x in a))


def _is_irreducible(m, p):
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    deg = len(m) - 1
    if m[0] == 0:
        return deg == 1
    for d in range(1, deg // 2 + 1):
        for code in range(p**d):
            div = _digits(code, p, d) + (1,)
            if not _poly_divides(div, m, p):
                continue
            return False
    return True


def _poly_divides(div, m, p):
    return len(_poly_mod(m, div, p)) == 0


def _digits(code, p, width):
    out = []
    for _ in range(width):
        out.append(code % p)
        code //= p
    return tuple(out)


def _undigits(digits, p):
    out = 0
    for d in reversed(digits):
        out = out * p + d
    return out


def _find_modulus(p, e):
    """Least primitive monic modulus of degree e.

    Candidates are ordered by their low-degree-first coefficient tuple
    (c0, .., c_{e-1}); the winner is the first irreducible one whose
    canonical root generates the full multiplicative group.
    """
    import itertools

    q = p**e
    for coeffs in itertools.product(range(p), repeat=e):
        m = coeffs + (1,)
        if not _is_irreducible(m, p):
            continue
        if e == 1:
            root = (-coeffs[0]) % p
            if root and _order_mod_p(root, p) == q - 1:
                return m
            continue
        if _root_order(m, p, e) == q - 1:
            return m
    raise FieldError(f"no primitive modulus of degree {e} over GF({p})")


def _order_mod_p(a, p):
    n, x = 1, a
    while x != 1:
        x = x * a % p
        n += 1
    return n


def _root_order(m, p, e):
    """Multiplicative order of the class of x in GF(p)[x]/(m)."""
    x = (0, 1)
    acc = x
    n = 1
    one = (1,)
    while acc != one:
        acc = _poly_mod(_poly_mul(acc, x, p), m, p)
        n += 1
        if n > p**e:
            return 0  # x is a zero divisor (m not irreducible) or 0
    return n


class GF:
    """GF(p^e) with canonical modulus and table-driven arithmetic."""

    def __init__(self, p, e=1):
        if not is_prime(p):
            raise NotPrimeError(f"characteristic {p} is not prime")
        if e < 1:
            raise FieldError("degree must be at least 1")
        if p**e > FIELD_MAX:
            raise FieldTooLargeError(f"{p}^{e} exceeds {FIELD_MAX}")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = _find_modulus(p, e)
        self._build_tables()

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        if e == 1:
            self.generator = (-self.modulus[0]) % p
        else:
            self.generator = p  # the class of x
        # discrete log/exp for the cyclic group of order q-1
        exp = [1] * (q - 1)
        log = [0] * q
        g_poly = _digits(self.generator, p, e)
        acc = (1,)
        for i in range(1, q - 1):
            acc = _poly_mod(_poly_mul(acc, g_poly, p), self.modulus, p)
            code = _undigits(acc, p)
            exp[i] = code
            log[code] = i
        self._exp = exp
        self._log = log
        if q <= 256:
            self._add = [bytes(self._add_slow(a, b) for b in range(q)) for a in range(q)]
        elif q <= _ADD_TABLE_MAX:
            self._add = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]
        else:
            self._add = None
        self._neg = [self._mul_scalar(a, p - 1) for a in range(q)]
        self.squares = frozenset(self.mul(a, a) for a in range(q))

    def _add_slow(self, a, b):
        out = 0
        shift = 1
        for _ in range(self.e):
            out += (a % self.p + b % self.p) % self.p * shift
            a //= self.p
            b //= self.p
            shift *= self.p
        return out

    def _mul_scalar(self, a, c):
        out = 0
        shift = 1
        for _ in range(self.e):
            out += a % self.p * c % self.p * shift
            a //= self.p
            shift *= self.p
        return out

    # -- arithmetic --

    def add(self, a, b):
        if self._add is not None:
            return self._add[a][b]
        return self._add_slow(a, b)

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of 0")
            return 0 if n else 1
        return self._exp[n * self._log[a] % (self.q - 1)]

    def frobenius(self, a, k=1):
        """a ** (p**k)."""
        if a == 0:
            return 0
        return self.pow(a, pow(self.p, k % self.e, self.q - 1))

    def element_order(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        return (self.q - 1) // _gcd(self.q - 1, self._log[a])

    def is_square(self, a):
        return a in self.squares

    # -- the designated index-2 subfield (even degree only) --

    def _half(self):
        if self.e % 2:
            raise NotSquareOrderError(f"GF({self.q}) has odd degree {self.e}")
        return self.e // 2

    @property
    def subfield_order(self):
        return self.p ** self._half()

    def bar(self, a):
        """The involutory automorphism x -> x^sqrt(q) over the subfield."""
        return self.frobenius(a, self._half())

    def in_subfield(self, a):
        return self.bar(a) == a

    def subfield_codes(self):
        half = self._half()
        codes = frozenset(a for a in range(self.q) if self.bar(a) == a)
        assert len(codes) == self.p**half
        return codes

    def norm(self, a):
        """Norm onto the index-2 subfield: a * bar(a)."""
        return self.mul(a, self.bar(a))

    # -- misc --

    def elements(self):
        return range(self.q)

    def poly_str(self, coeffs=None):
        coeffs = self.modulus if coeffs is None else coeffs
        terms = []
        for i in range(len(coeffs) - 1, -1, -1):
            c = coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                base = "x" if i == 1 else f"x^{i}"
                terms.append(base if c == 1 else f"{c}{base}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def field(p, e=1):
    """Cached constructor; fields are immutable once built."""
    return GF(p, e)


@lru_cache(maxsize=None)
def field_of_order(q):
    """GF(q) for a prime power q, factoring q automatically."""
    p = 2
    while p * p <= q:
        if q % p == 0:
            e = 0
            n = q
            while n % p == 0:
                n //= p
                e += 1
            if n != 1:
                raise NotPrimeError(f"{q} is not a prime power")
            return field(p, e)
        p += 1
    return field(q, 1)


def norm_square_implies_square(F2):
    """Check, exhaustively, that any x whose norm onto the subfield is a
    nonzero subfield square is itself a square in the big field."""
    sub = F2.subfield_codes()
    sub_squares = {F2.mul(c, c) for c in sub if c}
    for x in range(1, F2.q):
        if F2.norm(x) in sub_squares and not F2.is_square(x):
            return False
    return True
