import cmath
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from zetakit.errors import DomainError, PoleError
from zetakit.hurwitz import (
    EvalResult,
    ResidueClass,
    hurwitz_formula_residual,
    hurwitz_regular,
    hurwitz_special_value,
    hurwitz_zeta,
    residue_class_zeta,
    riemann_even_value,
    riemann_zeta,
)

# frozen with mpmath.zeta at 30 digits
FROZEN = [
    (0.5 + 14j, 1.0, complex(0.022241142609993589, -0.10325812326645006)),
    (3.0, 0.25, complex(64.66386996876846, 0.0)),
    (-3.5 + 2j, 0.7, complex(-0.038686930313326663, -0.013883624637026446)),
    (2 + 30j, 0.3, complex(0.12958765405972502, -11.547541167905783)),
    (-7.2, 0.45, complex(-0.0034794592459030155, 0.0)),
    (0.5 + 99j, 0.9, complex(-1.3642943107098583, -1.4344999135312168)),
]


@pytest.mark.parametrize("s, alpha, expected", FROZEN)
def test_frozen_values(s, alpha, expected):
    r = hurwitz_zeta(s, alpha)
    assert abs(r.value - expected) < 1e-12 * max(1.0, abs(expected))
    assert abs(r.value - expected) <= r.err_estimate + 1e-15


def test_zeta_two():
    assert abs(hurwitz_zeta(2, 1).value - math.pi**2 / 6) < 1e-14


def test_exact_special_values():
    assert hurwitz_special_value(2, Fraction(1, 3)) == Fraction(-1, 81)
    assert hurwitz_special_value(0, 1) == Fraction(-1, 2)
    assert hurwitz_special_value(1, 1) == Fraction(-1, 12)
    assert abs(hurwitz_zeta(-2, 1 / 3).value + 1 / 81) < 1e-15


def test_riemann_even_values():
    assert riemann_even_value(1) == Fraction(1, 6)
    assert riemann_even_value(2) == Fraction(1, 90)
    assert abs(float(riemann_even_value(3)) * math.pi**6 - hurwitz_zeta(6, 1).value) < 1e-12


@pytest.mark.parametrize("n", range(9))
@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(1)])
def test_exact_agrees_with_continuation(n, alpha):
    assert abs(hurwitz_zeta(-n, float(alpha)).value - float(hurwitz_special_value(n, alpha))) < 1e-10


def test_residue_class_values():
    assert abs(residue_class_zeta(3, ResidueClass(1, 1)).value - riemann_zeta(3).value) == 0
    # f(-2, a) = -a(m-a)(m-2a)/(6m)
    assert abs(residue_class_zeta(-2, ResidueClass(1, 3)).value + 1 / 9) < 1e-14


def test_residue_class_pole():
    rc = ResidueClass(2, 5)
    for eps in (1e-4, 1e-6):
        assert abs(eps * residue_class_zeta(1 + eps, rc).value - 0.2) < 10 * eps
    with pytest.raises(PoleError):
        residue_class_zeta(1, rc)


def test_pole_and_domain_errors():
    with pytest.raises(PoleError):
        hurwitz_zeta(1, 0.5)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 0.0)
    with pytest.raises(DomainError):
        ResidueClass(0, 3)


def test_alpha_above_one_is_shifted():
    # zeta(s, alpha) = zeta(s, alpha + 1) + alpha^{-s}
    s = 1.5 + 2j
    assert abs(hurwitz_zeta(s, 2.3).value + 1.3 ** -s - hurwitz_zeta(s, 1.3).value) < 1e-13


@pytest.mark.parametrize(
    "s, rc, tol",
    [(2.3, ResidueClass(1, 1), 1e-10), (0.7 + 3j, ResidueClass(2, 5), 1e-9), (3, ResidueClass(1, 4), 1e-10)],
)
def test_hurwitz_formula_examples(s, rc, tol):
    assert hurwitz_formula_residual(s, rc) < tol


def test_hurwitz_formula_excludes_poles():
    for s in (0, 1, -3):
        with pytest.raises(PoleError):
            hurwitz_formula_residual(s, ResidueClass(1, 3))


complex_s = st.builds(
    complex,
    st.floats(-6, 6, allow_nan=False),
    st.floats(-40, 40, allow_nan=False),
).filter(lambda s: abs(s - 1) > 1e-3)


@settings(max_examples=60, deadline=None)
@given(complex_s, st.integers(1, 10))
def test_residue_classes_partition_integers(s, m):
    parts = [residue_class_zeta(s, ResidueClass(a, m)) for a in range(1, m + 1)]
    total = sum(r.value for r in parts)
    ref = riemann_zeta(s)
    # the class sums can be far larger than zeta(s) and cancel, so rounding scales with them
    scale = max(1.0, abs(ref.value), sum(abs(r.value) for r in parts))
    budget = sum(r.err_estimate for r in parts) + ref.err_estimate + 1e-13 * scale
    assert abs(total - ref.value) < budget


@settings(max_examples=60, deadline=None)
@given(complex_s)
def test_half_shift_identity(s):
    ref = (2**s - 1) * riemann_zeta(s).value
    assert abs(hurwitz_zeta(s, 0.5).value - ref) < 1e-11 * max(1.0, abs(ref))


@settings(max_examples=80, deadline=None)
@given(complex_s, st.floats(0.01, 1.0))
def test_against_mpmath(s, alpha):
    r = hurwitz_zeta(s, alpha)
    ref = complex(mpmath.zeta(s, alpha))
    assert abs(r.value - ref) <= r.err_estimate + 1e-13 * max(1.0, abs(ref))
    assert r.err_estimate <= 1e-12 * max(1.0, abs(ref))


@settings(max_examples=40, deadline=None)
@given(
    st.builds(complex, st.floats(-8, 8), st.floats(-100, 100)).filter(lambda s: abs(s - 1) > 1e-3),
    st.floats(0.01, 1.0),
)
def test_error_estimate_high_in_strip(s, alpha):
    r = hurwitz_zeta(s, alpha)
    ref = complex(mpmath.zeta(s, alpha))
    assert abs(r.value - ref) <= r.err_estimate
    assert r.err_estimate <= 1e-12 * max(1.0, abs(ref))


def _laurent_constants(alpha):
    # (1 + eps) - 1 is the step actually taken in floating point
    return [hurwitz_zeta(1 + eps, alpha).value.real - 1 / ((1 + eps) - 1) for eps in (1e-3, 1e-4, 1e-5)]


@pytest.mark.parametrize("alpha", [1.0, 0.3, 0.75])
def test_laurent_constant_converges(alpha):
    # zeta(1 + eps, alpha) - 1/eps = -digamma(alpha) + O(eps): the gap shrinks tenfold per step
    vals = _laurent_constants(alpha)
    assert abs(vals[1] - vals[2]) < 0.2 * abs(vals[0] - vals[1])
    assert abs(vals[2] + float(mpmath.digamma(alpha))) < 1e-4
    assert abs(hurwitz_regular(1, alpha).value + float(mpmath.digamma(alpha))) < 1e-12


def test_laurent_constant_four_digits():
    # at alpha = 1 the O(eps) coefficient is small and four digits settle already at eps = 1e-3
    vals = _laurent_constants(1.0)
    assert max(vals) - min(vals) < 1e-4
    assert abs(vals[-1] - 0.5772156649015329) < 1e-5


def test_eval_result_is_validated():
    with pytest.raises(ValueError):
        EvalResult(1.0, -1.0)
    assert complex(EvalResult(2j, 0.0)) == 2j


def test_large_imaginary_part_on_critical_line():
    ref = complex(mpmath.zeta(0.5 + 400j))
    assert abs(riemann_zeta(0.5 + 400j).value - ref) < 1e-10


def test_reflected_zeta_error_estimate_covers_rounding():
    # mpmath.zeta(-6 + 27j) at 40 digits
    ref = -2615.3750946975993 + 13739.247222127318j
    r = riemann_zeta(-6 + 27j)
    assert abs(r.value - ref) <= r.err_estimate
    assert abs(r.value - ref) < 1e-13 * abs(ref)
