import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from zetakit.critical_line import (
    FourierKernel,
    LaguerrePolyaSpec,
    argument_principle_count,
    cosine_transform_census,
    count_zeros_rvm,
    find_zeros,
    hardy_z,
    hurwitz_cosine_transform,
    landau_integrals,
    laguerre_polya_eval,
    polya_xi_star,
    rs_theta,
    xi_completed,
    xi_integral,
    xi_integral_residual,
)
from zetakit.errors import ArgTrackingError, DomainError
from zetakit.hurwitz import riemann_zeta

FIRST_ZEROS = [14.134725141734694, 21.022039638771555, 25.010857580145689]
ZERO_10, ZERO_29 = 49.773832477672302, 98.831194218193692


def test_theta_values():
    assert rs_theta(0) == 0
    for t, ref in ((1, -1.7675479528122904), (20, 1.186894808444484), (100, 87.97216523178722)):
        assert abs(rs_theta(t) - ref) < 1e-11
        assert abs(rs_theta(-t) + rs_theta(t)) < 1e-12


def test_theta_matches_continuous_argument():
    # accumulate arg Gamma(1/4 + it/2) in small steps from t = 0
    total, prev = 0.0, complex(mpmath.gamma(0.25))
    for t in np.linspace(0, 20, 2001)[1:]:
        cur = complex(mpmath.gamma(complex(0.25, t / 2)))
        total += cmath.phase(cur / prev)
        prev = cur
    assert abs(rs_theta(20) - (total - 10 * math.log(math.pi))) < 1e-10


def test_hardy_z_values():
    assert abs(hardy_z(0) + 1.4603545088095868) < 1e-12
    for t, ref in ((10, -1.5491945461810224), (50.5, -1.1428921840238019), (100, 2.6926970566644635)):
        assert abs(hardy_z(t) - ref) < 1e-10
    assert hardy_z(14) * hardy_z(15) < 0
    assert hardy_z(-23.7) == pytest.approx(hardy_z(23.7), abs=1e-13)


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 300))
def test_hardy_z_modulus(t):
    assert abs(abs(hardy_z(t)) - abs(riemann_zeta(complex(0.5, t)).value)) < 1e-10


def test_xi_values():
    assert abs(xi_completed(0) - 0.49712077818831411) < 1e-14
    for t in (3.3, 17.0, 2.0 + 0.3j):
        assert abs(xi_completed(t) - xi_completed(-t)) < 1e-12
    assert abs(xi_completed(FIRST_ZEROS[0])) < 1e-6
    # real on the real axis
    assert abs(xi_completed(12.5).imag) < 1e-15


def test_xi_at_one_and_zero_of_s():
    # s = 0 and s = 1 correspond to t = +-i/2, where Xi = 1/2
    assert abs(xi_completed(0.5j) - 0.5) < 1e-14
    assert abs(xi_completed(-0.5j) - 0.5) < 1e-14


@pytest.mark.parametrize("t, tol", [(0, 1e-8), (5, 1e-7), (10, 1e-7), (20, 1e-7), (-10, 1e-7)])
def test_xi_integral(t, tol):
    assert xi_integral_residual(t) < tol


def test_xi_integral_domain():
    with pytest.raises(DomainError):
        xi_integral(100)


def test_find_zeros_small():
    z = find_zeros(0, 15)
    assert len(z) == 1
    assert abs(z[0].ordinate - FIRST_ZEROS[0]) < 1e-6
    lo, hi = z[0].bracket
    assert lo <= z[0].ordinate <= hi and hi - lo <= 1e-9


def test_find_zeros_fifty():
    z = find_zeros(0, 50)
    assert len(z) == 10
    assert [abs(r.ordinate - ref) < 1e-8 for r, ref in zip(z, FIRST_ZEROS)] == [True] * 3
    assert abs(z[-1].ordinate - ZERO_10) < 1e-8


def test_find_zeros_partition():
    whole = [r.ordinate for r in find_zeros(10, 40)]
    parts = [r.ordinate for r in find_zeros(10, 23.3)] + [r.ordinate for r in find_zeros(23.3, 40)]
    assert whole == parts


def test_find_zeros_parallel_matches_serial():
    serial = [r.ordinate for r in find_zeros(0, 60)]
    parallel = [r.ordinate for r in find_zeros(0, 60, workers=3)]
    assert serial == parallel


def test_find_zeros_domain():
    with pytest.raises(DomainError):
        find_zeros(5, 5)
    with pytest.raises(DomainError):
        find_zeros(0, 10, step=0.5)


def test_rvm_counts():
    assert count_zeros_rvm(50) == 10
    assert count_zeros_rvm(100) == 29
    counts = [count_zeros_rvm(t) for t in (10, 20, 30, 40, 60, 80)]
    assert counts == sorted(counts)
    with pytest.raises(DomainError):
        count_zeros_rvm(0)


def test_xi_alternates_between_zeros():
    z = [r.ordinate for r in find_zeros(0, 60)]
    mids = [(a + b) / 2 for a, b in zip(z, z[1:])]
    signs = [math.copysign(1, xi_completed(t).real) for t in mids]
    assert all(a == -b for a, b in zip(signs, signs[1:]))


@pytest.mark.parametrize("T", [30, 50, 100])
def test_landau_inequality(T):
    signed, absolute = landau_integrals(T)
    assert signed < absolute
    assert find_zeros(T, 2 * T)


def test_cosine_transform_constant_kernel():
    k = FourierKernel((2.0,))
    for z in (0.3, 2.0 + 1j, 7.5):
        assert abs(hurwitz_cosine_transform(k, z) - cmath.sin(z) / z) < 1e-14
    assert hurwitz_cosine_transform(k, 0) == 1


def test_cosine_transform_against_quadrature():
    k = FourierKernel((2.0, -1.0, 0.5, -0.25))
    f = lambda t: 1.0 - math.cos(math.pi * t) + 0.5 * math.cos(2 * math.pi * t) - 0.25 * math.cos(3 * math.pi * t)
    for z in (0.7, 3.1, 9.4):
        ref, _ = integrate.quad(lambda t: f(t) * math.cos(z * t), 0, 1, epsabs=1e-14)
        assert abs(hurwitz_cosine_transform(k, z) - ref) < 1e-12


def test_kernel_validation():
    with pytest.raises(DomainError):
        FourierKernel((2.0, 1.0))
    with pytest.raises(DomainError):
        FourierKernel(())


def test_cosine_census_one_term():
    census = cosine_transform_census(FourierKernel((2.0, -1.0)))
    first, second = census.real_zeros
    assert 0 < first < math.pi
    # the second zero sits on the closed right end of (pi, 2 pi]
    assert abs(second - 2 * math.pi) < 1e-9
    assert census.all_real and census.one_per_interval


def test_cosine_census_three_terms():
    census = cosine_transform_census(FourierKernel((2.0, -1.0, 0.5, -0.25)))
    assert len(census.real_zeros) == 4
    assert census.per_interval == (1, 1, 1, 1)
    assert census.rectangle_count == 8


def test_argument_principle_on_known_function():
    # cos has zeros at +-pi/2, +-3pi/2 inside |Re z| < 5
    assert argument_principle_count(cmath.cos, -5, 5, -2, 2) == 4
    with pytest.raises(ArgTrackingError):
        argument_principle_count(cmath.cos, -math.pi / 2, 1, -1, 1)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.floats(0.01, 100), min_size=1, max_size=9))
def test_cosine_census_random_kernels(mags):
    kernel = FourierKernel(tuple(m if k % 2 == 0 else -m for k, m in enumerate(mags)))
    census = cosine_transform_census(kernel)
    assert census.all_real and census.one_per_interval


def test_polya_xi_star():
    assert abs(polya_xi_star(0) - 0.026257249234943025) < 1e-12
    for t in (3.0, 10.0, 27.5):
        ref = float(2 * mpmath.pi**2 * mpmath.re(mpmath.besselk(2.25 + 0.5j * t, 2 * mpmath.pi)))
        assert abs(polya_xi_star(t) - ref) < 1e-12
        assert polya_xi_star(-t) == polya_xi_star(t)


def test_polya_xi_star_zeros_are_simple():
    ts = np.arange(0.0, 40.0, 0.05)
    vals = [polya_xi_star(float(t)) for t in ts]
    brackets = [(ts[i], ts[i + 1]) for i in range(len(ts) - 1) if vals[i] * vals[i + 1] < 0]
    assert brackets
    for a, b in brackets:
        # a simple zero: the sign change persists on a finer grid and the slope is nonzero
        fine = np.linspace(a, b, 9)
        fv = [polya_xi_star(float(t)) for t in fine]
        assert sum(1 for x, y in zip(fv, fv[1:]) if x * y < 0) == 1
        assert abs(fv[-1] - fv[0]) > 0


def test_laguerre_polya_products():
    assert laguerre_polya_eval(LaguerrePolyaSpec(), 3 + 2j) == 1
    for s in (0.3, 1.7 + 0.2j):
        assert abs(laguerre_polya_eval(LaguerrePolyaSpec(zeros=(1, -1)), s) - (1 - s * s)) < 1e-14
    with pytest.raises(DomainError):
        LaguerrePolyaSpec(c=0.5)
    with pytest.raises(DomainError):
        LaguerrePolyaSpec(zeros=(0.0,))


def test_laguerre_polya_sine_limit():
    # zeros at +-n pi give sin(s)/s; equivalently zeros +-n evaluated at s/pi give sin(pi x)/(pi x)
    n = 200
    product = LaguerrePolyaSpec(zeros=tuple(k * math.pi * sgn for k in range(1, n + 1) for sgn in (1, -1)))
    s = 0.3
    assert abs(laguerre_polya_eval(product, s) - math.sin(s) / s) < 1e-4
    unit = LaguerrePolyaSpec(zeros=tuple(k * sgn for k in range(1, n + 1) for sgn in (1, -1)))
    x = s / math.pi
    assert abs(laguerre_polya_eval(unit, x) - math.sin(math.pi * x) / (math.pi * x)) < 1e-4
    # convergence in N
    def err(m):
        prod_m = LaguerrePolyaSpec(zeros=tuple(k * sgn for k in range(1, m + 1) for sgn in (1, -1)))
        return abs(laguerre_polya_eval(prod_m, x) - math.sin(math.pi * x) / (math.pi * x))

    assert err(50) > err(100) > err(200)
