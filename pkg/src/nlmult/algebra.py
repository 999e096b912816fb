"""Exact arithmetic over the rationals: matrices, univariate polynomials,
square-free decomposition, Sturm sequences and real-root isolation.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  Polynomials store coefficients in ascending degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

Matrix = Sequence[Sequence[Fraction]]


class EndpointRootError(ValueError):
    """An interval endpoint is a root; nudge the endpoint and retry."""


class RationalPoly:
    """Univariate polynomial over Q, coefficients ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [x if type(x) is Fraction else Fraction(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "RationalPoly":
        out = cls((1,))
        for r in roots:
            out = out * cls((-Fraction(r), 1))
        return out

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{a} {mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def to_strings(self) -> list[str]:
        """Ascending coefficients as ``"p/q"`` strings, e.g. ``["0/1", "5/4"]``."""
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Iterable[str]) -> "RationalPoly":
        return cls(Fraction(s) for s in items)

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(-c for c in self.coeffs)

    def __add__(self, other) -> "RationalPoly":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return RationalPoly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __sub__(self, other) -> "RationalPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "RationalPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "RationalPoly":
        if isinstance(other, (int, Fraction)):
            return RationalPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RationalPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RationalPoly":
        out = RationalPoly((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "RationalPoly") -> tuple["RationalPoly", "RationalPoly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv = 1 / other.lead
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        bc = other.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            q = rem[k] * inv
            if q:
                quot[k - db] = q
                for j in range(db + 1):
                    rem[k - db + j] -= q * bc[j]
        return RationalPoly(quot), RationalPoly(rem[:db] if db > 0 else ())

    def __floordiv__(self, other: "RationalPoly") -> "RationalPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "RationalPoly") -> "RationalPoly":
        return divmod(self, other)[1]

    def derivative(self, k: int = 1) -> "RationalPoly":
        c = self.coeffs
        for _ in range(k):
            c = tuple(i * c[i] for i in range(1, len(c)))
        return RationalPoly(c)

    def monic(self) -> "RationalPoly":
        if not self.coeffs:
            return self
        inv = 1 / self.lead
        return RationalPoly(c * inv for c in self.coeffs)

    def integer_coeffs(self) -> list[int]:
        """Primitive integer multiple with positive leading coefficient."""
        if not self.coeffs:
            return []
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [c.numerator * (den // c.denominator) for c in self.coeffs]
        return primitive(ints)


def _as_poly(x) -> RationalPoly:
    return x if isinstance(x, RationalPoly) else RationalPoly((x,))


def primitive(ints: Sequence[int]) -> list[int]:
    """Divide by the content and make the leading coefficient positive."""
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g == 0:
        return []
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    """Monic gcd (the zero polynomial only if both inputs are zero)."""
    return RationalPoly(_int_gcd(a.integer_coeffs(), b.integer_coeffs())).monic()


def _int_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd of integer polynomials by the primitive remainder sequence."""
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _neg_prem(a, b)
    return primitive(a)


def _int_exact_div(a: list[int], b: list[int]) -> list[int]:
    """Quotient of integer polynomials when ``b`` is primitive and divides ``a``."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c, rem = divmod(r[k], lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        if c:
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] -= c * b[j]
    if any(r[:db]):
        raise ArithmeticError("inexact polynomial division")
    while q and not q[-1]:
        q.pop()
    return q


def _int_derivative(a: Sequence[int]) -> list[int]:
    return [i * a[i] for i in range(1, len(a))]


def _int_sub(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and not out[-1]:
        out.pop()
    return out


# -- matrices ---------------------------------------------------------------


def identity(k: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]


def matmul(a: Matrix, b: Matrix) -> list[list[Fraction]]:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def charpoly(m: Matrix) -> RationalPoly:
    """det(xI - m) by the Faddeev-LeVerrier recurrence."""
    k = len(m)
    if k == 0 or any(len(row) != k for row in m):
        raise ValueError("charpoly needs a non-empty square matrix")
    a = [[Fraction(x) for x in row] for row in m]
    c = [Fraction(0)] * (k + 1)
    c[k] = Fraction(1)
    aux = [[Fraction(0)] * k for _ in range(k)]
    for step in range(1, k + 1):
        aux = matmul(a, aux)
        for i in range(k):
            aux[i][i] += c[k - step + 1]
        prod = matmul(a, aux)
        c[k - step] = -sum(prod[i][i] for i in range(k)) / step
    return RationalPoly(c)


def det_bareiss(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [list(row) for row in m]
    k = len(a)
    sign = 1
    prev = 1
    for p in range(k - 1):
        if a[p][p] == 0:
            for r in range(p + 1, k):
                if a[r][p]:
                    a[p], a[r] = a[r], a[p]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[p][p]
        row_p = a[p]
        for i in range(p + 1, k):
            row_i = a[i]
            f = row_i[p]
            for j in range(p + 1, k):
                row_i[j] = (piv * row_i[j] - f * row_p[j]) // prev
        prev = piv
    return sign * a[k - 1][k - 1] if k else 1


def rank(m: Matrix) -> int:
    """Rank over Q via fraction-free Gaussian elimination."""
    rows = []
    for row in m:
        row = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([x.numerator * (den // x.denominator) for x in row])
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        piv = rows[r][col]
        for i in range(r + 1, len(rows)):
            f = rows[i][col]
            rows[i] = [(piv * x - f * y) // prev for x, y in zip(rows[i], rows[r])]
        prev = piv
        r += 1
        if r == len(rows):
            break
    return r


# -- square-free decomposition ---------------------------------------------


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """``p = unit * prod(factor ** mult)`` with monic, square-free, coprime factors."""

    parts: tuple[tuple[RationalPoly, int], ...]
    unit: Fraction

    def expand(self) -> RationalPoly:
        out = RationalPoly((self.unit,))
        for f, k in self.parts:
            out = out * f**k
        return out

    def part(self, multiplicity: int) -> RationalPoly | None:
        for f, k in self.parts:
            if k == multiplicity:
                return f
        return None

    def radical(self) -> RationalPoly:
        if len(self.parts) == 1:
            return self.parts[0][0]
        out = RationalPoly((1,))
        for f, _ in self.parts:
            out = out * f
        return out


def squarefree(p: RationalPoly) -> SquarefreeDecomposition:
    """Yun's algorithm, skipped when a modular gcd already proves ``p`` square-free."""
    if not p:
        raise ValueError("square-free decomposition of the zero polynomial")
    unit = p.lead
    f = p.monic()
    parts = []
    if f.degree <= 0:
        return SquarefreeDecomposition((), unit)
    ints = p.integer_coeffs()
    if not may_have_root_of_multiplicity_int(ints, 2):
        return SquarefreeDecomposition(((f, 1),), unit)
    # over Z: primitive divisors give integral quotients (Gauss's lemma)
    df = _int_derivative(ints)
    a = _int_gcd(ints, df)
    b = _int_exact_div(ints, a)
    c = _int_exact_div(df, a)
    d = _int_sub(c, _int_derivative(b))
    k = 1
    while len(b) > 1:
        a = _int_gcd(b, d) if d else primitive(b)
        if len(a) > 1:
            parts.append((RationalPoly(a).monic(), k))
        b = _int_exact_div(b, a)
        c = _int_exact_div(d, a) if d else []
        d = _int_sub(c, _int_derivative(b))
        k += 1
    return SquarefreeDecomposition(tuple(parts), unit)


def may_have_root_of_multiplicity(p: RationalPoly, m: int) -> bool:
    """Cheap necessary test for a root of multiplicity >= ``m``.

    Such a root is shared by the (m-1)-th and (m-2)-th derivatives, so a
    trivial gcd of those two rules it out exactly.
    """
    if m <= 1:
        return p.degree >= 1
    if p.degree < m:
        return False
    hi = p.derivative(m - 1)
    lo = p.derivative(m - 2)
    return poly_gcd(lo, hi).degree > 0


MODULUS = (1 << 61) - 1


def _derivative_mod(c: Sequence[int], j: int, q: int) -> list[int]:
    out = []
    for i in range(j, len(c)):
        f = 1
        for t in range(i - j + 1, i + 1):
            f *= t
        out.append(c[i] * f % q)
    return out


def _gcd_degree_mod(a: list[int], b: list[int], q: int) -> int:
    while b:
        inv = pow(b[-1], -1, q)
        a = a[:]
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            f = a[-1] * inv % q
            off = len(a) - 1 - db
            for i in range(db + 1):
                a[off + i] = (a[off + i] - f * b[i]) % q
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def may_have_root_of_multiplicity_int(ints: Sequence[int], m: int) -> bool:
    """Integer-coefficient version of :func:`may_have_root_of_multiplicity`.

    Works modulo the prime 2**61 - 1.  An integer gcd of positive degree
    has a leading coefficient dividing both leads, so it survives the
    reduction whenever the leads are nonzero mod the prime; a trivial gcd
    mod the prime therefore rules the root out.
    """
    deg = len(ints) - 1
    if m <= 1:
        return deg >= 1
    if deg < m:
        return False
    q = MODULUS
    hi = _derivative_mod(ints, m - 1, q)
    lo = _derivative_mod(ints, m - 2, q)
    if hi[-1] == 0 or lo[-1] == 0:
        return may_have_root_of_multiplicity(RationalPoly(ints), m)
    return _gcd_degree_mod(lo, hi, q) > 0


# -- Sturm sequences and isolation -----------------------------------------


def sign_at(ints: Sequence[int], x: Fraction) -> int:
    """Sign of the integer polynomial ``ints`` at rational ``x``."""
    if not ints:
        return 0
    num, den = x.numerator, x.denominator
    acc = ints[-1]
    pw = 1
    for c in reversed(ints[:-1]):
        pw *= den
        acc = acc * num + c * pw
    return (acc > 0) - (acc < 0)


def sturm_sequence(p: RationalPoly) -> list[list[int]]:
    """Sturm chain of ``p`` as primitive integer polynomials.

    Each remainder is rescaled by a positive constant, which leaves sign
    variations unchanged.
    """
    a = p.integer_coeffs()
    b = p.derivative().integer_coeffs()
    seq = [a, b]
    while len(b) > 1:
        r = _neg_prem(a, b)
        if not r:
            break
        seq.append(r)
        a, b = b, r
    return seq


def _neg_prem(a: list[int], b: list[int]) -> list[int]:
    """Primitive integer polynomial equal to ``-(a mod b)`` up to a positive factor."""
    lb = b[-1]
    db = len(b) - 1
    r = list(a)
    steps = 0
    while len(r) - 1 >= db and r:
        f = r[-1]
        off = len(r) - 1 - db
        r = [c * lb for c in r]
        for i in range(db + 1):
            r[off + i] -= f * b[i]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        steps += 1
    if not r:
        return []
    # r = lb**steps * (a mod b); undo the sign of that factor and negate
    flip = -1 if (lb < 0 and steps % 2) else 1
    g = 0
    for c in r:
        g = gcd(g, c)
    return [-flip * c // g for c in r]


def _variations(seq: Sequence[Sequence[int]], x: Fraction) -> int:
    count = 0
    last = 0
    for q in seq:
        s = sign_at(q, x)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def cauchy_bound(p: RationalPoly) -> Fraction:
    """Every complex root satisfies |z| < 1 + max |a_i / a_n|."""
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def sturm_count(p: RationalPoly, lo, hi) -> int:
    """Number of distinct real roots of square-free ``p`` in ``(lo, hi)``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("sturm_count needs lo < hi")
    if p(lo) == 0 or p(hi) == 0:
        raise EndpointRootError("interval endpoint is a root; nudge it")
    seq = sturm_sequence(p)
    return _variations(seq, lo) - _variations(seq, hi)


@dataclass(frozen=True)
class IsolatingInterval:
    """Half-open interval ``(lo, hi]`` holding exactly one root; endpoints are never roots."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo < x <= self.hi

    def distance(self, x: float) -> float:
        if x < self.lo:
            return float(self.lo - Fraction(x))
        if x > self.hi:
            return float(Fraction(x) - self.hi)
        return 0.0

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    def to_strings(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in (self.lo, self.hi)]


def _sign_dyadic(ints: Sequence[int], num: int, e: int) -> int:
    """Sign of ``ints`` at ``num / 2**e``."""
    acc = ints[-1]
    shift = 0
    for c in reversed(ints[:-1]):
        shift += e
        acc = acc * num + (c << shift)
    return (acc > 0) - (acc < 0)


def _variations_dyadic(seq: Sequence[Sequence[int]], num: int, e: int) -> int:
    count = 0
    last = 0
    for q in seq:
        s = _sign_dyadic(q, num, e)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def isolate_roots(p: RationalPoly) -> list[IsolatingInterval]:
    """Disjoint isolating intervals, ascending, one per real root of square-free ``p``.

    Bisection runs on dyadic rationals ``num / 2**e`` to keep the arithmetic
    in plain integers.
    """
    if p.degree < 1:
        return []
    ints = p.integer_coeffs()
    seq = sturm_sequence(p)
    b = cauchy_bound(p)
    bound = -(-b.numerator // b.denominator)
    out = []
    stack = [(-bound, bound, 0, _variations_dyadic(seq, -bound, 0), _variations_dyadic(seq, bound, 0))]
    while stack:
        lo, hi, e, vlo, vhi = stack.pop()
        count = vlo - vhi
        if count == 0:
            continue
        if count == 1:
            out.append(IsolatingInterval(Fraction(lo, 1 << e), Fraction(hi, 1 << e)))
            continue
        lo, hi, e = lo << 1, hi << 1, e + 1
        mid = (lo + hi) >> 1
        while _sign_dyadic(ints, mid, e) == 0:
            lo, hi, mid, e = lo << 1, hi << 1, lo + mid, e + 1
        vmid = _variations_dyadic(seq, mid, e)
        stack.append((lo, mid, e, vlo, vmid))
        stack.append((mid, hi, e, vmid, vhi))
    out.sort(key=lambda iv: iv.lo)
    return out


def refine(p: RationalPoly | Sequence[int], iv: IsolatingInterval, width) -> IsolatingInterval:
    """Bisect ``iv`` (isolating for square-free ``p``) down to at most ``width``."""
    ints = p.integer_coeffs() if isinstance(p, RationalPoly) else list(p)
    width = Fraction(width)
    lo, hi = iv.lo, iv.hi
    slo = sign_at(ints, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign_at(ints, mid)
        if s == 0:
            # exact root found; any other point of the interval is a non-root
            quarter = min((hi - lo) / 4, width / 4)
            return IsolatingInterval(mid - quarter, mid + quarter)
        if s == slo:
            lo = mid
        else:
            hi = mid
    return IsolatingInterval(lo, hi)


def seeded_refine(p: RationalPoly | Sequence[int], iv: IsolatingInterval, seed: float, width) -> IsolatingInterval:
    """Like :func:`refine`, but first tries a window of ``width`` centred on an
    approximate root; the window is kept only if a sign change certifies it."""
    ints = p.integer_coeffs() if isinstance(p, RationalPoly) else list(p)
    width = Fraction(width)
    x = Fraction(seed)
    lo, hi = max(iv.lo, x - width / 2), min(iv.hi, x + width / 2)
    if lo < hi:
        slo, shi = sign_at(ints, lo), sign_at(ints, hi)
        if slo * shi < 0:
            return IsolatingInterval(lo, hi)
    return refine(ints, iv, width)


def has_root_in(p: RationalPoly | Sequence[int], iv: IsolatingInterval) -> bool:
    """For square-free ``p`` with at most one root in ``iv``: is there one?"""
    ints = p.integer_coeffs() if isinstance(p, RationalPoly) else list(p)
    return sign_at(ints, iv.lo) * sign_at(ints, iv.hi) < 0


def residual_mod(p: RationalPoly, minpoly: RationalPoly) -> RationalPoly:
    """Remainder of ``p`` modulo ``minpoly``; zero iff ``p`` vanishes at every root of it."""
    if minpoly.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    return p % minpoly


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def factor_at(factor: RationalPoly, iv: IsolatingInterval) -> RationalPoly:
    """The factor of ``factor`` vanishing at the root isolated by ``iv``.

    Rational roots of quadratics are split off, so for degree <= 2 the
    result is the minimal polynomial of the root.  Higher degrees are
    returned unchanged (a multiple of the minimal polynomial).
    """
    f = factor.monic()
    if f.degree == 2:
        c0, c1 = f.coeffs[0], f.coeffs[1]
        root = _rational_sqrt(c1 * c1 - 4 * c0)
        if root is not None:
            for r in ((-c1 - root) / 2, (-c1 + root) / 2):
                if iv.contains(r):
                    return RationalPoly((-r, 1))
    return f
