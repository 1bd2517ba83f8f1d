"""Vanishing sums of roots of unity and their certification.

A length-k relation is a tuple of roots of unity with nonzero rational
coefficients and a declared target value.  A relation with target zero is
minimal when no nonempty proper subset of its terms also sums to zero.
For such minimal relations, every ratio of two participating roots has
order dividing the product of the primes up to k (Mann's bound); for two
minimal representations of the same nonzero target, the same conclusion
holds with primes up to the combined length (the extension bound).  Both
bounds are checked here by exact root-of-unity arithmetic, never floats.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .cyclotomic import CycNum, root_of_unity, unit_roots
from .errors import CapExceeded, WorkBudgetExceeded

SUBSUM_CAP = 12
WORK_BUDGET = 10 ** 8

_ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# primes and moduli
# ---------------------------------------------------------------------------

def primes_upto(x) -> list:
    """All primes p <= x, by a byte sieve."""
    n = math.floor(x)
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(2, n + 1) if sieve[i]]


def _primorial_upto(x) -> int:
    out = 1
    for p in primes_upto(x):
        out *= p
    return out


def mann_modulus(k: int) -> int:
    """Product of the primes up to k.

    In a minimal vanishing sum of k roots of unity, every ratio of two of
    the roots has order dividing this number.
    """
    if k < 1:
        raise ValueError("length must be at least 1")
    return _primorial_upto(k)


def extension_modulus(k: int) -> int:
    """Product of the primes up to 2k.

    The ratio bound that applies across two minimal length-k
    representations of the same nonzero target.
    """
    if k < 1:
        raise ValueError("length must be at least 1")
    return _primorial_upto(2 * k)


def relation_count_bound(k: int) -> int:
    """Upper bound (k * extension_modulus(k))^k on the number of minimal
    k-term root-of-unity combinations hitting a fixed nonzero target."""
    if k < 1:
        raise ValueError("length must be at least 1")
    return (k * extension_modulus(k)) ** k


def chebyshev_theta(x) -> float:
    """Sum of log p over primes p <= x (floating value, for reporting)."""
    return float(sum(math.log(p) for p in primes_upto(x)))


def chebyshev_bound_holds(x: int) -> bool:
    """Certified check that theta(x) < 4x log 2.

    Exact equivalence: theta(x) < 4x log 2 iff the product of the primes
    up to x is below 2^(4x), which is a pure integer bit-length test.
    """
    if x < 0:
        raise ValueError("x must be nonnegative")
    return _primorial_upto(x).bit_length() <= 4 * x


def chebyshev_bound_range(lo: int, hi: int):
    """Certified theta(x) < 4x log 2 for every integer x in [lo, hi].

    Returns (True, None) when the bound holds throughout, otherwise
    (False, first failing x).  One incremental primorial is shared by
    the whole sweep.
    """
    if lo < 0 or hi < lo:
        raise ValueError("need 0 <= lo <= hi")
    prime_set = set(primes_upto(hi))
    prod = _primorial_upto(lo - 1) if lo > 0 else 1
    for x in range(lo, hi + 1):
        if x in prime_set:
            prod *= x
        if prod.bit_length() > 4 * x:
            return False, x
    return True, None


# ---------------------------------------------------------------------------
# vector helpers (coefficient tuples in a fixed conductor)
# ---------------------------------------------------------------------------

def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vneg(a):
    return tuple(-x for x in a)


def _vscale(a, q):
    return tuple(x * q for x in a)


class SubsetSumTracker:
    """Multiset of all nonempty-subset sums of a stack of vectors.

    Supports O(1) detection of whether pushing a new vector would create
    a vanishing subset: that happens iff the vector is zero or its
    negation already occurs as a subset sum.  Push cost doubles with
    depth, so callers cap the stack height.
    """

    def __init__(self):
        self._sums = Counter()
        self._stack = []
        self.total = None

    def __len__(self):
        return len(self._stack)

    def conflicts(self, v) -> bool:
        """True iff pushing v would create a vanishing nonempty subset."""
        if not any(v):
            return True
        return self._sums[_vneg(v)] > 0

    def neg_count(self, v) -> int:
        """How many current subset sums equal -v."""
        return self._sums[_vneg(v)]

    def push(self, v):
        adds = [(v, 1)]
        for s, mult in list(self._sums.items()):
            adds.append((_vadd(s, v), mult))
        for val, m in adds:
            self._sums[val] += m
        self.total = v if self.total is None else _vadd(self.total, v)
        self._stack.append(adds)

    def pop(self):
        adds = self._stack.pop()
        for val, m in adds:
            left = self._sums[val] - m
            if left:
                self._sums[val] = left
            else:
                del self._sums[val]
        if self._stack:
            self.total = _vsub(self.total, adds[0][0])
        else:
            self.total = None


# ---------------------------------------------------------------------------
# relation tuples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationTuple:
    """Roots of unity with rational weights summing to a declared target.

    When `minimal` is set, no nonempty proper subset of the weighted
    terms sums to zero; the constructor re-checks that claim.
    """

    roots: tuple
    coeffs: tuple
    target: CycNum
    minimal: bool = False

    def __post_init__(self):
        roots = tuple(self.roots)
        if any(isinstance(c, float) for c in self.coeffs):
            raise ValueError("coefficients must be exact rationals, not floats")
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        target = CycNum._coerce(self.target)
        if target is None:
            raise ValueError("target must be a CycNum or rational")
        if len(roots) != len(coeffs) or not roots:
            raise ValueError("roots and coeffs must be nonempty and equal length")
        if any(c == 0 for c in coeffs):
            raise ValueError("coefficients must be nonzero")
        one = CycNum.one()
        for r in roots:
            if not isinstance(r, CycNum):
                raise ValueError("roots must be CycNum values")
            order = math.lcm(2, r.conductor)
            if r ** order != one:
                raise ValueError(f"{r!r} is not a root of unity")
        total = CycNum.zero()
        for r, c in zip(roots, coeffs):
            total = total + r * c
        if total != target:
            raise ValueError("weighted sum does not equal the target")
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "target", target)
        if self.minimal and subsum_vanishes(self) is not None:
            raise ValueError("tuple marked minimal but a proper subsum vanishes")

    def __len__(self):
        return len(self.roots)


@dataclass(frozen=True)
class MannCertificate:
    """Outcome of the ratio-order check on a minimal vanishing sum."""

    k: int
    modulus: int
    verdict: bool
    witness: Optional[tuple] = None


def _item_vectors(roots, coeffs):
    """Weighted terms as coefficient tuples in a common conductor."""
    conductor = 1
    for r in roots:
        conductor = math.lcm(conductor, r.conductor)
    return [tuple((r.lift(conductor) * c).coeffs) for r, c in zip(roots, coeffs)]


def subsum_vanishes(t: RelationTuple, cap: int = SUBSUM_CAP):
    """First nonempty proper index subset of t whose weighted sum is zero.

    Returns the subset as a sorted tuple of indices, or None.  The scan
    is incremental over subsets containing each newest term, so every
    subset is formed exactly once.  Tuples longer than `cap` are refused.
    """
    k = len(t)
    if k > cap:
        raise CapExceeded(f"subset scan capped at {cap} terms, got {k}")
    vecs = _item_vectors(t.roots, t.coeffs)
    entries = []
    for i, v in enumerate(vecs):
        fresh = [((i,), v)]
        for idx, s in entries:
            fresh.append((idx + (i,), _vadd(s, v)))
        for idx, s in fresh:
            if len(idx) < k and not any(s):
                return idx
        entries.extend(fresh)
    return None


# ---------------------------------------------------------------------------
# enumeration of minimal vanishing sums
# ---------------------------------------------------------------------------

def _validate_coeff_set(coeff_set):
    cs = sorted({Fraction(c) for c in coeff_set})
    if not cs:
        raise ValueError("coefficient set must be nonempty")
    if any(c == 0 for c in cs):
        raise ValueError("coefficient set must not contain zero")
    return cs


def _canonical_entries(entries, m):
    """Rotation-normal form: smallest sorted tuple of (exponent, coeff)
    pairs over all rotations placing one of the roots at exponent zero."""
    best = None
    for e0, _ in entries:
        cand = tuple(sorted(((e - e0) % m, c) for e, c in entries))
        if best is None or cand < best:
            best = cand
    return best


def enumerate_minimal_vanishing_sums(
    k: int, m: int, coeff_set, budget: int = WORK_BUDGET
) -> list:
    """All rotation-normalized minimal vanishing sums of k roots in mu_m.

    Coefficients are drawn (with repetition) from coeff_set.  Two sums
    that differ by multiplying every root with a common m-th root of
    unity are identified; the representative returned has its smallest
    term at exponent zero.  The search prunes any branch whose chosen
    terms already contain a vanishing subset, so emitted tuples are
    minimal by construction.
    """
    if k < 2:
        raise ValueError("need at least two terms")
    if m < 1:
        raise ValueError("modulus must be positive")
    cs = _validate_coeff_set(coeff_set)
    estimate = (m * len(cs)) ** k
    if estimate > budget:
        raise WorkBudgetExceeded(estimate, budget)

    pairs = [(e, c) for e in range(m) for c in cs]
    roots = unit_roots(m)
    values = [_vscale(roots[e].coeffs, c) for e, c in pairs]

    tracker = SubsetSumTracker()
    chosen = []
    found = set()

    def extend(min_idx, remaining):
        if remaining == 1:
            for idx in range(min_idx, len(pairs)):
                v = values[idx]
                if tracker.total is None:
                    continue
                if any(_vadd(tracker.total, v)):
                    continue
                if tracker.neg_count(v) != 1:
                    continue
                entries = tuple(pairs[i] for i in chosen) + (pairs[idx],)
                found.add(_canonical_entries(entries, m))
            return
        for idx in range(min_idx, len(pairs)):
            v = values[idx]
            if tracker.conflicts(v):
                continue
            tracker.push(v)
            chosen.append(idx)
            extend(idx, remaining - 1)
            chosen.pop()
            tracker.pop()

    # pivot term at exponent zero; the other terms follow in sorted order
    for pivot_idx in range(len(cs)):
        v = values[pivot_idx]
        tracker.push(v)
        chosen.append(pivot_idx)
        extend(pivot_idx, k - 1)
        chosen.pop()
        tracker.pop()

    zero = CycNum.zero()
    out = []
    for entries in sorted(found):
        out.append(
            RelationTuple(
                roots=tuple(root_of_unity(e, m) for e, _ in entries),
                coeffs=tuple(c for _, c in entries),
                target=zero,
                minimal=True,
            )
        )
    return out


def certify_mann(t: RelationTuple) -> MannCertificate:
    """Check Mann's ratio bound on a minimal vanishing sum.

    For every pair of roots in the tuple, the ratio must satisfy
    ratio^m = 1 with m = mann_modulus(k).  The verdict is False with the
    offending index pair as witness when some ratio has larger order.
    """
    if not isinstance(t, RelationTuple):
        raise ValueError("certify_mann expects a RelationTuple")
    if not t.target.is_zero():
        raise ValueError("not a minimal vanishing sum: target is nonzero")
    if not t.minimal:
        raise ValueError("not a minimal vanishing sum: minimality not established")
    k = len(t)
    m = mann_modulus(k)
    one = CycNum.one()
    for i in range(k):
        for j in range(i + 1, k):
            # conjugate of a root of unity is its inverse
            ratio = t.roots[i] * t.roots[j].conj()
            if ratio ** m != one:
                return MannCertificate(k=k, modulus=m, verdict=False, witness=(i, j))
    return MannCertificate(k=k, modulus=m, verdict=True, witness=None)


# ---------------------------------------------------------------------------
# minimal representations of a nonzero target
# ---------------------------------------------------------------------------

def enumerate_target_relations(
    target, k: int, m: int, coeff_set, budget: int = WORK_BUDGET
) -> list:
    """Minimal k-term representations of a nonzero target over mu_m.

    Each result is an ordered tuple of k roots from mu_m with
    coefficients from coeff_set whose weighted sum equals the target and
    no nonempty proper subsum vanishes.  Root tuples are recorded once,
    with the first coefficient witness found; no rotation normalization
    applies because the target pins the phase.
    """
    a = CycNum._coerce(target)
    if a is None:
        raise ValueError("target must be a CycNum or rational")
    if a.is_zero():
        raise ValueError("target must be nonzero")
    if k < 1:
        raise ValueError("length must be at least 1")
    if m < 1:
        raise ValueError("modulus must be positive")
    cs = _validate_coeff_set(coeff_set)
    estimate = (m * len(cs)) ** k
    if estimate > budget:
        raise WorkBudgetExceeded(estimate, budget)

    conductor = math.lcm(a.conductor, m)
    avec = tuple(a.lift(conductor).coeffs)
    rvecs = [tuple(r.lift(conductor).coeffs) for r in unit_roots(m)]
    index = {rv: e for e, rv in enumerate(rvecs)}
    values = [[_vscale(rv, c) for c in cs] for rv in rvecs]

    found = {}

    def record(exponents, coeffs):
        if exponents not in found:
            found[exponents] = coeffs

    if k == 1:
        for c in cs:
            u = _vscale(avec, 1 / c)
            e = index.get(u)
            if e is not None:
                record((e,), (c,))
    else:
        tracker = SubsetSumTracker()
        prefix = []

        def close():
            residual = _vsub(avec, tracker.total)
            if not any(residual):
                return
            # any proper subset containing the last term would sum to zero
            # iff -residual already occurs among the prefix subset sums
            if tracker.neg_count(residual) != 0:
                return
            for c in cs:
                u = _vscale(residual, 1 / c)
                e = index.get(u)
                if e is not None:
                    exps = tuple(e0 for e0, _ in prefix) + (e,)
                    record(exps, tuple(c0 for _, c0 in prefix) + (c,))

        def extend(depth):
            if depth == k - 1:
                close()
                return
            for e in range(m):
                row = values[e]
                for ci, c in enumerate(cs):
                    v = row[ci]
                    if tracker.conflicts(v):
                        continue
                    tracker.push(v)
                    prefix.append((e, c))
                    extend(depth + 1)
                    prefix.pop()
                    tracker.pop()

        extend(0)

    out = []
    for exps in sorted(found):
        coeffs = found[exps]
        out.append(
            RelationTuple(
                roots=tuple(root_of_unity(e, m) for e in exps),
                coeffs=coeffs,
                target=a,
                minimal=True,
            )
        )
    return out


def certify_extension(t1: RelationTuple, t2: RelationTuple):
    """Ratio check across two minimal representations of one nonzero target.

    With m the product of the primes up to len(t1) + len(t2), every root
    of t2 must satisfy (root2 / root1)^m = 1 against some root of t1.
    Returns (verdict, witness) where witness maps each index of t2 to
    the first matching index of t1.
    """
    for t in (t1, t2):
        if not isinstance(t, RelationTuple):
            raise ValueError("certify_extension expects RelationTuples")
        if not t.minimal:
            raise ValueError("both tuples must be minimal")
    if t1.target.is_zero():
        raise ValueError("target must be nonzero")
    if t1.target != t2.target:
        raise ValueError("targets differ")
    m = _primorial_upto(len(t1) + len(t2))
    one = CycNum.one()
    witness = {}
    for j, r2 in enumerate(t2.roots):
        hit = None
        for i, r1 in enumerate(t1.roots):
            if (r2 * r1.conj()) ** m == one:
                hit = i
                break
        if hit is None:
            return False, witness
        witness[j] = hit
    return True, witness
