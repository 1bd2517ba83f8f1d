"""Ring layer: canonical forms, arithmetic, classification."""

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cyclolab import (
    CycNum,
    NotRational,
    RationalAngleForm,
    approx_complex,
    change_conductor,
    classify_rational_angle,
    cyclotomic_polynomial,
    phi,
    real_sign,
    root_of_unity,
    unit_roots,
)

import oracles


# ---------------------------------------------------------------------------
# cyclotomic polynomials
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", list(range(1, 121)) + [128, 210, 255])
def test_cyclotomic_polynomial_matches_sympy(n):
    assert cyclotomic_polynomial(n) == oracles.phi_coeffs(n)


def test_cyclotomic_polynomial_known_values():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_cyclotomic_polynomial_rejects_nonpositive():
    with pytest.raises(ValueError):
        cyclotomic_polynomial(0)


@pytest.mark.parametrize("n", range(1, 200))
def test_phi_matches_sympy_totient(n):
    assert phi(n) == sympy.totient(n)


# ---------------------------------------------------------------------------
# constructors and canonical form
# ---------------------------------------------------------------------------

def test_constructor_pads_and_reduces():
    x = CycNum(3, (1, 1, 1))
    assert x.is_zero()
    y = CycNum(5, (2,))
    assert y.coeffs == (Fraction(2), Fraction(0), Fraction(0), Fraction(0))


def test_constructor_rejects_floats():
    with pytest.raises(TypeError):
        CycNum(4, (0.5, 0))


def test_immutability():
    x = CycNum.one()
    with pytest.raises(AttributeError):
        x.coeffs = (Fraction(2),)


def test_rational_helpers():
    q = CycNum.from_rational(Fraction(7, 3))
    assert q.is_rational()
    assert q.as_rational() == Fraction(7, 3)
    z = root_of_unity(1, 5)
    assert not z.is_rational()
    with pytest.raises(NotRational):
        z.as_rational()


def test_zero_one_bool():
    assert not CycNum.zero()
    assert CycNum.one()
    assert CycNum.zero().is_zero()
    assert (CycNum.one() - 1).is_zero()


# ---------------------------------------------------------------------------
# arithmetic against the long-form oracle
# ---------------------------------------------------------------------------

CONDUCTORS = [1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16, 20, 24]

small_fraction = st.fractions(
    min_value=Fraction(-9), max_value=Fraction(9), max_denominator=6
)


def cycnums(conductor):
    return st.lists(
        small_fraction, min_size=phi(conductor), max_size=phi(conductor)
    ).map(lambda cs: CycNum(conductor, cs))


@st.composite
def cycnum_pairs(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    return draw(cycnums(n)), draw(cycnums(n))


@given(cycnum_pairs())
@settings(max_examples=60, deadline=None)
def test_mul_matches_longform(pair):
    a, b = pair
    got = a * b
    ref = oracles.LongForm.from_cyc(a).mul(oracles.LongForm.from_cyc(b))
    assert ref.equals_cyc(got)


@given(cycnum_pairs())
@settings(max_examples=60, deadline=None)
def test_add_sub_match_longform(pair):
    a, b = pair
    assert oracles.LongForm.from_cyc(a).add(oracles.LongForm.from_cyc(b)).equals_cyc(a + b)
    assert oracles.LongForm.from_cyc(a).sub(oracles.LongForm.from_cyc(b)).equals_cyc(a - b)


@st.composite
def cycnum_triples(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    return draw(cycnums(n)), draw(cycnums(n)), draw(cycnums(n))


@given(cycnum_triples())
@settings(max_examples=40, deadline=None)
def test_ring_axioms(triple):
    a, b, c = triple
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == CycNum.zero()


@given(cycnum_pairs())
@settings(max_examples=40, deadline=None)
def test_conjugation_is_an_involution_and_multiplicative(pair):
    a, b = pair
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()


@given(cycnums(12))
@settings(max_examples=30, deadline=None)
def test_inverse_on_conductor_12(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == CycNum.one()


def test_inverse_examples():
    z = root_of_unity(1, 5)
    x = CycNum.one() + z
    assert x * x.inverse() == CycNum.one()
    assert z.inverse() == z.conj()
    assert (CycNum.from_rational(Fraction(2, 3))).inverse() == Fraction(3, 2)


def test_division_and_pow():
    z = root_of_unity(1, 8)
    assert z ** 8 == CycNum.one()
    assert z ** -1 == z.conj()
    assert z ** 0 == CycNum.one()
    assert (z / z) == CycNum.one()
    assert 1 / z == z ** 7
    with pytest.raises(ZeroDivisionError):
        z / CycNum.zero()


def test_mixed_rational_operands():
    z = root_of_unity(1, 3)
    assert z + 1 == 1 + z
    assert 2 * z == z * 2 == z + z
    assert z - Fraction(1, 2) == -(Fraction(1, 2) - z)


# ---------------------------------------------------------------------------
# conductor management, equality, hashing
# ---------------------------------------------------------------------------

def test_lift_and_cross_conductor_equality():
    z3 = root_of_unity(1, 3)
    z12_4 = root_of_unity(4, 12)
    assert z3 == z12_4
    assert hash(z3) == hash(z12_4)
    assert z3.lift(12).conductor == 12
    with pytest.raises(ValueError):
        z3.lift(4)


def test_min_conductor():
    assert root_of_unity(4, 12).min_conductor() == 3
    assert CycNum.from_rational(5).min_conductor() == 1
    assert root_of_unity(3, 6).min_conductor() == 1  # equals -1, a rational
    assert root_of_unity(1, 6).min_conductor() == 3  # zeta_6 = -zeta_3^2
    assert root_of_unity(1, 8).min_conductor() == 8
    assert CycNum(12, (0, 0, 0, 0)).min_conductor() == 1


def test_hash_respects_equality_in_sets():
    pool = {
        root_of_unity(1, 3),
        root_of_unity(4, 12),
        root_of_unity(2, 6),
        CycNum.from_rational(1),
        root_of_unity(0, 7),
    }
    assert len(pool) == 2


def test_change_conductor_round_trip():
    z3 = root_of_unity(1, 3)
    up = change_conductor(z3, 12)
    assert up == root_of_unity(4, 12)
    assert change_conductor(up, 3) == z3
    assert change_conductor(CycNum.from_rational(-1), 6) == root_of_unity(3, 6)
    with pytest.raises(ValueError):
        change_conductor(z3, 4)
    with pytest.raises(ValueError):
        change_conductor(z3, 0)


@given(cycnum_pairs(), st.sampled_from([2, 3, 5, 7]))
@settings(max_examples=30, deadline=None)
def test_lifting_preserves_results(pair, mult):
    a, b = pair
    m = a.conductor * mult
    assert (a * b).lift(m) == a.lift(m) * b.lift(m)
    assert (a + b).lift(m) == a.lift(m) + b.lift(m)


def test_galois_maps():
    z = root_of_unity(1, 12)
    assert z.galois(5) == root_of_unity(5, 12)
    assert z.galois(11) == z.conj()
    x = CycNum(12, (1, 2, 3, 4))
    assert x.galois(5).galois(5) == x.galois(25 % 12)
    with pytest.raises(ValueError):
        z.galois(4)


def test_roots_of_unity_basics():
    assert root_of_unity(0, 1) == CycNum.one()
    assert root_of_unity(3, 6) == CycNum.from_rational(-1)
    assert root_of_unity(7, 5) == root_of_unity(2, 5)
    assert len(unit_roots(12)) == 12
    prod = CycNum.one()
    for r in unit_roots(5):
        prod = prod * r
    assert prod == CycNum.one()
    with pytest.raises(ValueError):
        root_of_unity(1, 0)


# ---------------------------------------------------------------------------
# rational-angle classification
# ---------------------------------------------------------------------------

def test_classify_examples():
    assert classify_rational_angle(CycNum.one()).astuple() == (Fraction(1), 0, 2)
    assert classify_rational_angle(CycNum.from_rational(-2)).astuple() == (
        Fraction(2),
        1,
        2,
    )
    form = classify_rational_angle(root_of_unity(1, 6) * 3)
    assert form.length == 3
    assert form.value() == root_of_unity(1, 6) * 3
    assert classify_rational_angle(CycNum(4, (1, 1))) is None
    assert classify_rational_angle(root_of_unity(1, 3) - 1) is None
    with pytest.raises(ValueError):
        classify_rational_angle(CycNum.zero())


def test_classify_rejects_wrong_type():
    with pytest.raises(TypeError):
        classify_rational_angle(0.5)


@given(
    st.fractions(min_value=Fraction(1, 7), max_value=Fraction(50), max_denominator=7),
    st.integers(min_value=0, max_value=59),
)
@settings(max_examples=60, deadline=None)
def test_classify_recovers_scaled_roots(q, e):
    w = root_of_unity(e, 60) * q
    form = classify_rational_angle(w)
    assert form is not None
    assert form.length == q
    assert form.value() == w
    # the squared modulus must equal length squared
    assert (w * w.conj()).as_rational() == q * q


@given(st.integers(min_value=1, max_value=24), st.integers(min_value=0, max_value=23))
@settings(max_examples=40, deadline=None)
def test_classify_agrees_with_brute_division(n, e):
    w = root_of_unity(e % n, n) * Fraction(3, 2)
    form = classify_rational_angle(w)
    brute = oracles.brute_classify(w)
    assert brute is not None and form is not None
    assert (form.length, form.exponent, form.modulus) == brute


def test_rational_angle_form_validation():
    with pytest.raises(ValueError):
        RationalAngleForm(Fraction(0), 0, 2)
    with pytest.raises(ValueError):
        RationalAngleForm(Fraction(1), 5, 4)
    f = RationalAngleForm(Fraction(2), 1, 4)
    assert f == RationalAngleForm(Fraction(2), 1, 4)
    assert hash(f) == hash(RationalAngleForm(Fraction(2), 1, 4))
    with pytest.raises(AttributeError):
        f.exponent = 3


# ---------------------------------------------------------------------------
# numeric bridge and exact signs
# ---------------------------------------------------------------------------

def test_approx_complex_values():
    z8 = approx_complex(root_of_unity(1, 8))
    assert abs(z8 - complex(math.sqrt(0.5), math.sqrt(0.5))) < 1e-12
    z4 = approx_complex(root_of_unity(1, 4))
    assert abs(z4 - 1j) < 1e-12
    s = approx_complex(CycNum.one() + root_of_unity(1, 3) + root_of_unity(2, 3))
    assert abs(s) < 1e-12
    with pytest.raises(ValueError):
        approx_complex(CycNum.one(), digits=0)


def test_real_sign_rational_and_zero():
    assert real_sign(CycNum.zero()) == 0
    assert real_sign(CycNum.from_rational(Fraction(-3, 7))) == -1
    assert real_sign(CycNum.from_rational(2)) == 1


def test_real_sign_irrational_reals():
    z8 = root_of_unity(1, 8)
    sqrt2 = z8 + z8.conj()
    assert real_sign(sqrt2) == 1
    assert real_sign(-sqrt2) == -1
    z5 = root_of_unity(1, 5)
    golden = z5 + z5.conj()  # 2cos(72 deg) = (sqrt(5) - 1) / 2
    assert real_sign(golden) == 1
    assert real_sign(golden - 1) == -1


def test_real_sign_rejects_nonreal():
    with pytest.raises(ValueError):
        real_sign(root_of_unity(1, 4))


# ---------------------------------------------------------------------------
# display
# ---------------------------------------------------------------------------

def test_repr_and_str():
    z = root_of_unity(1, 12)
    assert "z12" in str(z)
    assert str(CycNum.zero()) == "0"
    assert "CycNum(12" in repr(z)
