"""Exact arithmetic in cyclotomic fields.

Elements live in Q(zeta_N) for a declared conductor N and are stored as
coefficient vectors over the power basis 1, zeta, ..., zeta^(phi(N)-1),
reduced modulo the N-th cyclotomic polynomial.  All coefficients are
`fractions.Fraction`; equality and the zero test are exact because the
basis representation is canonical.  Floating point enters only through
`approx_complex` and the interval fallback of `real_sign`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

import mpmath

from .errors import NotRational

_ZERO = Fraction(0)
_ONE = Fraction(1)

RationalLike = Union[int, Fraction]


# ---------------------------------------------------------------------------
# integer polynomial helpers
# ---------------------------------------------------------------------------

def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_div_exact_monic(num, den):
    """Divide num by a monic den, both integer coefficient lists.

    Returns (quotient, remainder).  Exactness is the caller's concern.
    """
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [], num
    q = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            q[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    return q, num[:dn]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients of the n-th cyclotomic polynomial, constant term first.

    Computed by the recursion Phi_n = (x^n - 1) / prod(Phi_d for proper
    divisors d of n).  The divisor product is monic, so the integer
    division is exact.
    """
    if n < 1:
        raise ValueError("conductor must be a positive integer")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    den = (1,)
    for d in range(1, n):
        if n % d == 0:
            den = tuple(_poly_mul_int(den, cyclotomic_polynomial(d)))
    q, r = _poly_div_exact_monic(num, den)
    if any(r):
        raise AssertionError(f"inexact cyclotomic division for n={n}")
    return tuple(q)


@lru_cache(maxsize=None)
def phi(n: int) -> int:
    """Euler totient, i.e. the degree of Q(zeta_n)."""
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _reduce_vec(vec, n):
    """Reduce a coefficient list (int or Fraction entries) mod Phi_n in place.

    Returns a list of exactly phi(n) entries.
    """
    pc = cyclotomic_polynomial(n)
    deg = len(pc) - 1
    for i in range(len(vec) - 1, deg - 1, -1):
        c = vec[i]
        if c:
            vec[i] = 0
            base = i - deg
            for j in range(deg):
                if pc[j]:
                    vec[base + j] -= c * pc[j]
    if len(vec) < deg:
        vec = list(vec) + [0] * (deg - len(vec))
    return vec[:deg]


def _to_int_scaled(coeffs):
    """Common-denominator form: returns (int list, denominator)."""
    den = 1
    for c in coeffs:
        d = c.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _as_fraction(c):
    if type(c) is Fraction:
        return c
    if isinstance(c, float):
        raise TypeError("float coefficients are not exact, pass Fraction or int")
    return Fraction(c)


# ---------------------------------------------------------------------------
# the field element
# ---------------------------------------------------------------------------

class CycNum:
    """An element of Q(zeta_N) in reduced power-basis form.

    Instances are immutable.  Operations on elements with different
    conductors lift both to the least common multiple first, so mixed
    arithmetic is always legal.  Equality and hashing are conductor
    independent: two elements are equal iff they agree after lifting,
    and the hash is taken over a minimal-conductor canonical form.
    """

    __slots__ = ("conductor", "coeffs", "_min_key")

    def __init__(self, conductor: int, coeffs: Iterable):
        d = phi(conductor)
        cs = [_as_fraction(c) for c in coeffs]
        if len(cs) == d:
            cs = tuple(cs)
        else:
            # any polynomial in zeta is accepted; reduce to the power basis
            cs = tuple(Fraction(c) for c in _reduce_vec(cs, conductor))
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "_min_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rational(cls, q: RationalLike) -> "CycNum":
        return cls(1, (Fraction(q),))

    @classmethod
    def zero(cls) -> "CycNum":
        return cls(1, (_ZERO,))

    @classmethod
    def one(cls) -> "CycNum":
        return cls(1, (_ONE,))

    # -- coercion -----------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return CycNum(1, (Fraction(x),))
        return None

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        """True iff every coefficient beyond the constant term vanishes."""
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRational(f"{self!r} is not rational")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- conductor handling ---------------------------------------------------

    def lift(self, m: int) -> "CycNum":
        """Representation of the same element in Q(zeta_m); requires N | m."""
        n = self.conductor
        if m == n:
            return self
        if m < 1 or m % n != 0:
            raise ValueError(f"incompatible conductor: {n} does not divide {m}")
        k = m // n
        vec = [_ZERO] * m
        for j, c in enumerate(self.coeffs):
            if c:
                vec[j * k] = c
        return CycNum(m, _reduce_vec(vec, m))

    def _common(self, other):
        n, m = self.conductor, other.conductor
        if n == m:
            return self, other
        l = math.lcm(n, m)
        return self.lift(l), other.lift(l)

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        return CycNum(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.conductor, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        return CycNum(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.conductor == 1:
            q = o.coeffs[0]
            return CycNum(self.conductor, tuple(c * q for c in self.coeffs))
        if self.conductor == 1:
            q = self.coeffs[0]
            return CycNum(o.conductor, tuple(c * q for c in o.coeffs))
        a, b = self._common(o)
        # integer convolution with the denominators pulled out front
        av, ad = _to_int_scaled(a.coeffs)
        bv, bd = _to_int_scaled(b.coeffs)
        conv = _poly_mul_int(av, bv)
        red = _reduce_vec(conv, a.conductor)
        den = ad * bd
        return CycNum(a.conductor, tuple(Fraction(c, den) for c in red))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycNum(1, (1 / self.coeffs[0],)).lift(self.conductor)
        n = self.conductor
        modulus = [Fraction(c) for c in cyclotomic_polynomial(n)]
        r0, r1 = list(self.coeffs), modulus
        s0, s1 = [_ONE], [_ZERO]
        while any(r1):
            q, r = _fpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _fpoly_sub(s0, _poly_mul_frac(q, s1))
        # r0 is a nonzero constant: Phi_n is irreducible over Q
        r0 = _fpoly_trim(r0)
        if len(r0) != 1:
            raise AssertionError("gcd with an irreducible modulus must be constant")
        c = r0[0]
        vec = [x / c for x in s0]
        return CycNum(n, _reduce_vec(vec, n))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.conductor == 1:
            q = o.coeffs[0]
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return CycNum(self.conductor, tuple(c / q for c in self.coeffs))
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = CycNum.one().lift(self.conductor)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- Galois action ---------------------------------------------------------

    def galois(self, t: int) -> "CycNum":
        """Image under zeta -> zeta^t for t coprime to the conductor."""
        n = self.conductor
        if n <= 2:
            return self
        t %= n
        if math.gcd(t, n) != 1:
            raise ValueError(f"galois exponent {t} not coprime to {n}")
        if t == 1:
            return self
        vec = [_ZERO] * n
        for j, c in enumerate(self.coeffs):
            if c:
                vec[(j * t) % n] += c
        return CycNum(n, _reduce_vec(vec, n))

    def conj(self) -> "CycNum":
        """Complex conjugate, i.e. the Galois map zeta -> zeta^(-1)."""
        return self.galois(self.conductor - 1) if self.conductor > 2 else self

    # -- equality and hashing ----------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.conductor == o.conductor:
            return self.coeffs == o.coeffs
        a, b = self._common(o)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash(self._minimal_key())

    def _minimal_key(self):
        key = self._min_key
        if key is None:
            key = _descend_to_minimal(self.conductor, self.coeffs)
            object.__setattr__(self, "_min_key", key)
        return key

    def min_conductor(self) -> int:
        """Smallest conductor whose field contains this element."""
        return self._minimal_key()[0]

    # -- display -------------------------------------------------------------

    def __repr__(self):
        return f"CycNum({self.conductor}, [{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        n = self.conductor
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
            elif j == 1:
                parts.append(f"{c}*z{n}" if c != 1 else f"z{n}")
            else:
                parts.append(f"{c}*z{n}^{j}" if c != 1 else f"z{n}^{j}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Fraction polynomial helpers (inverse computation only)
# ---------------------------------------------------------------------------

def _fpoly_trim(p):
    i = len(p)
    while i > 0 and not p[i - 1]:
        i -= 1
    return p[:i]


def _fpoly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [_ZERO] * (n - len(a))
    for i, c in enumerate(b):
        a[i] -= c
    return a


def _poly_mul_frac(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _fpoly_divmod(a, b):
    a = _fpoly_trim(list(a))
    b = _fpoly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [_ZERO] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - 1, len(b) - 2, -1):
        c = a[i]
        if c:
            f = c / lead
            q[i - len(b) + 1] = f
            for j in range(len(b)):
                a[i - len(b) + 1 + j] -= f * b[j]
    return q, _fpoly_trim(a)


# ---------------------------------------------------------------------------
# minimal-conductor descent (canonical form for hashing)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _descent_basis(n: int, m: int):
    """Power basis of Q(zeta_m) written in the conductor-n basis; m | n."""
    k = n // m
    cols = []
    for j in range(phi(m)):
        vec = [0] * (j * k + 1)
        vec[j * k] = 1
        cols.append(tuple(_reduce_vec(vec, n)))
    return tuple(cols)


def _solve_descent(n, m, coeffs):
    """Express coeffs (conductor n) over the lifted basis of Q(zeta_m).

    Returns the conductor-m coefficient tuple, or None when the element
    does not lie in the subfield.
    """
    cols = _descent_basis(n, m)
    rows = phi(n)
    w = len(cols)
    # Gaussian elimination on the augmented [cols | coeffs] system.
    mat = [[Fraction(cols[c][r]) for c in range(w)] + [coeffs[r]] for r in range(rows)]
    piv_rows = []
    r = 0
    for c in range(w):
        sel = None
        for rr in range(r, rows):
            if mat[rr][c]:
                sel = rr
                break
        if sel is None:
            return None
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for rr in range(rows):
            if rr != r and mat[rr][c]:
                f = mat[rr][c]
                mat[rr] = [x - f * y for x, y in zip(mat[rr], mat[r])]
        piv_rows.append(r)
        r += 1
    for rr in range(r, rows):
        if mat[rr][w]:
            return None
    return tuple(mat[i][w] for i in range(w))


def _descend_to_minimal(n, coeffs):
    """Canonical (conductor, coeffs) pair with the smallest possible conductor."""
    changed = True
    while changed:
        changed = False
        for p in _prime_factors(n):
            m = n // p
            # the element lies in Q(zeta_m) iff it is fixed by every
            # automorphism zeta -> zeta^t with t = 1 mod m
            fixed = True
            for t in range(1 + m, n, m):
                if math.gcd(t, n) != 1:
                    continue
                if _galois_raw(n, coeffs, t) != coeffs:
                    fixed = False
                    break
            if not fixed:
                continue
            sol = _solve_descent(n, m, coeffs)
            if sol is None:
                continue
            n, coeffs = m, sol
            changed = True
            break
    return n, coeffs


def _galois_raw(n, coeffs, t):
    vec = [_ZERO] * n
    for j, c in enumerate(coeffs):
        if c:
            vec[(j * t) % n] += c
    return tuple(_reduce_vec(vec, n))


# ---------------------------------------------------------------------------
# roots of unity and the rational-angle decision
# ---------------------------------------------------------------------------

def change_conductor(x: CycNum, conductor: int) -> CycNum:
    """Re-express x in Q(zeta_conductor).

    Lifting (old conductor divides the new one) always succeeds; going
    the other way succeeds exactly when the element lies in the smaller
    field, so a round trip through a larger conductor is the identity.
    """
    if conductor < 1:
        raise ValueError("conductor must be a positive integer")
    if conductor % x.conductor == 0:
        return x.lift(conductor)
    n0, coeffs = x._minimal_key()
    if conductor % n0 != 0:
        raise ValueError(
            f"incompatible conductor: element needs {n0}, which does not divide {conductor}"
        )
    return CycNum(n0, coeffs).lift(conductor)


def root_of_unity(e: int, n: int) -> CycNum:
    """zeta_n^e as an element of Q(zeta_n)."""
    if n < 1:
        raise ValueError("order must be a positive integer")
    e %= n
    vec = [0] * (e + 1)
    vec[e] = 1
    return CycNum(n, _reduce_vec(vec, n))


@lru_cache(maxsize=None)
def unit_roots(m: int) -> tuple:
    """All m-th roots of unity zeta_m^0 .. zeta_m^(m-1), in exponent order."""
    return tuple(root_of_unity(e, m) for e in range(m))


@lru_cache(maxsize=None)
def _roots_index(m: int) -> dict:
    """Coefficient tuple -> exponent, over all m-th roots of unity."""
    return {r.coeffs: e for e, r in enumerate(unit_roots(m))}


class RationalAngleForm:
    """Decomposition w = length * zeta_modulus^exponent with rational length > 0."""

    __slots__ = ("length", "exponent", "modulus")

    def __init__(self, length: Fraction, exponent: int, modulus: int):
        if length <= 0:
            raise ValueError("length must be positive")
        if not 0 <= exponent < modulus:
            raise ValueError("exponent out of range")
        object.__setattr__(self, "length", Fraction(length))
        object.__setattr__(self, "exponent", exponent)
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, name, value):
        raise AttributeError("RationalAngleForm is immutable")

    def value(self) -> CycNum:
        """The element this form denotes."""
        return root_of_unity(self.exponent, self.modulus) * self.length

    def astuple(self):
        return (self.length, self.exponent, self.modulus)

    def __eq__(self, other):
        if not isinstance(other, RationalAngleForm):
            return NotImplemented
        return self.astuple() == other.astuple()

    def __hash__(self):
        return hash(self.astuple())

    def __repr__(self):
        return f"RationalAngleForm({self.length}, {self.exponent}, {self.modulus})"


def _fraction_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def classify_rational_angle(w) -> Optional[RationalAngleForm]:
    """Decide whether w = q * zeta_M^e with q a positive rational.

    M is lcm(2, conductor of w); every root of unity inside Q(zeta_N) is an
    M-th root of unity, so the decision is complete: the squared modulus
    w * conj(w) must be the square of a rational q, and w / q must then
    appear in the table of all M-th roots.  Returns None when w has an
    irrational length or a non-rational angle; raises on zero input.
    """
    w = CycNum._coerce(w)
    if w is None:
        raise TypeError("classify_rational_angle expects a CycNum or rational")
    if w.is_zero():
        raise ValueError("zero input has no direction")
    m = math.lcm(2, w.conductor)
    norm = w * w.conj()
    if not norm.is_rational():
        return None
    q = _fraction_sqrt(norm.as_rational())
    if q is None:
        return None
    u = (w / q).lift(m)
    e = _roots_index(m).get(u.coeffs)
    if e is None:
        return None
    return RationalAngleForm(q, e, m)


# ---------------------------------------------------------------------------
# numeric views
# ---------------------------------------------------------------------------

def approx_complex(x: CycNum, digits: int = 15) -> complex:
    """Floating approximation of x, evaluated at `digits` working precision.

    The working precision only controls internal cancellation; the return
    value is an ordinary double-precision complex number.
    """
    if digits < 1:
        raise ValueError("digits must be positive")
    n = x.conductor
    with mpmath.workdps(digits + 10):
        total = mpmath.mpc(0)
        for j, c in enumerate(x.coeffs):
            if c:
                q = mpmath.mpf(c.numerator) / c.denominator
                total += q * mpmath.expjpi(mpmath.mpf(2 * j) / n)
        return complex(total)


def real_sign(x: CycNum) -> int:
    """Exact sign (-1, 0, 1) of a real cyclotomic number.

    Rational values are compared exactly.  Irrational real values are
    boxed with interval arithmetic at increasing precision; the loop
    terminates because zero was already ruled out exactly.
    """
    if x.is_zero():
        return 0
    if x.is_rational():
        return 1 if x.coeffs[0] > 0 else -1
    if x != x.conj():
        raise ValueError("real_sign needs a conjugation-fixed value")
    n = x.conductor
    prec = 64
    while True:
        old = mpmath.iv.prec
        try:
            mpmath.iv.prec = prec
            total = mpmath.iv.mpf(0)
            for j, c in enumerate(x.coeffs):
                if c:
                    q = mpmath.iv.mpf(c.numerator) / c.denominator
                    ang = mpmath.iv.pi * (mpmath.iv.mpf(2 * j) / n)
                    total += q * mpmath.iv.cos(ang)
            if total.a > 0:
                return 1
            if total.b < 0:
                return -1
        finally:
            mpmath.iv.prec = old
        prec *= 2
        if prec > 1 << 20:
            raise AssertionError("interval refinement failed to separate from zero")
