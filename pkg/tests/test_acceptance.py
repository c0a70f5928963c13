"""Acceptance criteria: each test checks one criterion's tolerances and its runtime budget."""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from zetakit.characters import enumerate_characters, gauss_sum
from zetakit.critical_line import (
    FourierKernel,
    cosine_transform_census,
    count_zeros_rvm,
    find_zeros,
    landau_integrals,
    xi_integral_residual,
)
from zetakit.dirichlet import (
    class_number_analytic,
    dirichlet_fe_residual,
    quadratic_f_fe_residual,
    reduced_forms_count,
    schloemilch_fe_residual,
)
from zetakit.characters import is_fundamental_discriminant
from zetakit.epstein import (
    Characteristics,
    GramMatrix,
    epstein_direct_sum,
    epstein_fe_residual,
    epstein_matrix_fe_residual,
    epstein_zeta,
)
from zetakit.hurwitz import ResidueClass, hurwitz_formula_residual, hurwitz_special_value, hurwitz_zeta
from zetakit.lerch import LerchParams, lerch_fe_residual, lipschitz_fe_residual
from zetakit.primes import euler_product_zeta, mertens_sum, segmented_prime_count, sieve
from zetakit.special import RationalPolynomial, bernoulli_polynomial

SEED = 0x5EED


class Budget:
    """Context manager that fails the test when the block overruns its budget."""

    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.2f} s, budget {self.seconds} s"


def _spd(rng, p, det=None):
    a = rng.uniform(-1, 1, size=(p, p))
    q = a @ a.T + 0.5 * np.eye(p)
    if det is not None:
        q *= (det / np.linalg.det(q)) ** (1 / p)
    return GramMatrix(q)


@pytest.mark.criterion(1, "exact Bernoulli polynomial and special values", 1)
def test_ac01_exact_special_values():
    with Budget(1):
        assert bernoulli_polynomial(3) == RationalPolynomial([0, Fraction(1, 2), Fraction(-3, 2), 1])
        alphas = [Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(3, 4),
                  Fraction(1, 5), Fraction(2, 5), Fraction(1, 6), Fraction(5, 6), Fraction(3, 7), Fraction(7, 8)]
        worst = max(
            abs(hurwitz_zeta(-n, float(a)).value - float(hurwitz_special_value(n, a)))
            for n in range(9)
            for a in alphas
        )
        assert worst < 1e-10


@pytest.mark.criterion(2, "zeta(2) by continuation and by Euler product", 5)
def test_ac02_zeta_two():
    with Budget(5):
        assert abs(hurwitz_zeta(2, 1).value - math.pi**2 / 6) < 1e-12
        assert abs(euler_product_zeta(2, sieve(10**6)) - math.pi**2 / 6) < 1e-6


@pytest.mark.criterion(3, "Hurwitz formula residual on 50 seeded samples", 10)
def test_ac03_hurwitz_formula():
    rng = np.random.default_rng(SEED)
    with Budget(10):
        worst = 0.0
        done = 0
        while done < 50:
            s = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
            if min(abs(s), abs(s - 1)) < 0.05:
                continue
            m = int(rng.integers(1, 13))
            a = int(rng.integers(1, m + 1))
            worst = max(worst, hurwitz_formula_residual(s, ResidueClass(a, m)))
            done += 1
        assert worst < 1e-8


@pytest.mark.criterion(4, "Gauss sums of primitive characters up to modulus 101", 10)
def test_ac04_gauss_sums():
    with Budget(10):
        checked = quadratic = 0
        for m in range(1, 102):
            for chi in enumerate_characters(m):
                if not chi.is_primitive:
                    continue
                tau = gauss_sum(chi)
                assert abs(abs(tau) - math.sqrt(m)) < 1e-10
                checked += 1
                if chi.is_real and m > 1:
                    expected = (1 if chi.parity == 1 else 1j) * math.sqrt(m)
                    assert abs(tau - expected) < 1e-10
                    quadratic += 1
        assert checked > 1000 and quadratic > 50


@pytest.mark.criterion(5, "Dirichlet functional equations for 30 seeded primitive characters", 30)
def test_ac05_dirichlet_fe():
    rng = np.random.default_rng(SEED)
    with Budget(30):
        pool = [chi for m in range(3, 41) for chi in enumerate_characters(m) if chi.is_primitive]
        residuals = []
        for i in rng.choice(len(pool), size=30, replace=False):
            s = complex(rng.uniform(-2, 3), rng.uniform(-10, 10))
            residuals.append(dirichlet_fe_residual(s, pool[int(i)]))
        for _ in range(3):
            residuals.append(schloemilch_fe_residual(complex(rng.uniform(-2, 3), rng.uniform(-10, 10))))
        for D in (5, 13, 17):
            residuals.append(quadratic_f_fe_residual(complex(rng.uniform(-2, 3), rng.uniform(-10, 10)), D))
        assert max(residuals) < 1e-8


@pytest.mark.criterion(6, "analytic class numbers for fundamental -200 < D < 0", 30)
def test_ac06_class_numbers():
    with Budget(30):
        assert class_number_analytic(-4) == 1 and class_number_analytic(-23) == 3
        discriminants = [D for D in range(-199, 0) if is_fundamental_discriminant(D)]
        assert len(discriminants) >= 60
        assert all(class_number_analytic(D) == reduced_forms_count(D) for D in discriminants)


@pytest.mark.criterion(7, "Lerch and Lipschitz functional equations", 60)
def test_ac07_lerch_lipschitz():
    rng = np.random.default_rng(SEED)
    with Budget(60):
        lerch = []
        for _ in range(20):
            lam, alpha = rng.uniform(0.02, 0.98, size=2)
            s = complex(rng.uniform(0.05, 0.95), rng.uniform(-10, 10))
            lerch.append(lerch_fe_residual(LerchParams(float(lam), float(alpha)), s))
        lipschitz = []
        for _ in range(10):
            u, v = rng.uniform(0.05, 0.95, size=2)
            s = complex(rng.uniform(0.05, 0.95), rng.uniform(-10, 10))
            lipschitz.append(lipschitz_fe_residual(float(u), float(v), s))
        assert max(lerch) < 1e-7
        assert max(lipschitz) < 1e-6


@pytest.mark.criterion(8, "Epstein direct sums, functional equation and determinant exponent", 120)
def test_ac08_epstein():
    rng = np.random.default_rng(SEED)
    with Budget(120):
        # continuation against truncated lattice sums, exponent on Q with Re s > p/2 + 1
        for p in (1, 2, 3):
            q = _spd(rng, p)
            s = complex(p / 2 + 1 + rng.uniform(0.1, 1.0), rng.uniform(-3, 3))
            cont, direct = epstein_zeta(s, q), epstein_direct_sum(2 * s, q)
            assert abs(cont.value - direct.value) <= cont.err_estimate + direct.err_estimate
        worst = 0.0
        for _ in range(20):
            q = _spd(rng, 2)
            ch = Characteristics(tuple(rng.uniform(-1, 1, 2)), tuple(rng.uniform(-1, 1, 2)))
            s = complex(rng.uniform(-1, 3), rng.uniform(-5, 5))
            worst = max(worst, epstein_fe_residual(s, q, ch))
        assert worst < 1e-7
        q = GramMatrix([[2.0, 0.0], [0.0, 3.0]])
        assert epstein_matrix_fe_residual(1.3, q, det_exponent=-0.5) < 1e-8
        assert epstein_matrix_fe_residual(1.3, q, det_exponent=-1.0) > 1e-2
        for _ in range(5):
            q = _spd(rng, int(rng.integers(1, 4)), det=float(rng.uniform(2, 6)))
            s = complex(rng.uniform(0.2, 1.2), rng.uniform(-1, 1))
            assert epstein_matrix_fe_residual(s, q, det_exponent=-0.5) < 1e-8
            assert epstein_matrix_fe_residual(s, q, det_exponent=-1.0) > 1e-2


@pytest.mark.criterion(9, "zeros on the critical line, counting, Xi integral, Landau", 120)
def test_ac09_critical_line():
    with Budget(120):
        zeros = find_zeros(0, 100)
        assert len(zeros) == 29
        assert abs(zeros[0].ordinate - 14.134725) < 1e-5
        assert count_zeros_rvm(50) == len(find_zeros(0, 50)) == 10
        assert count_zeros_rvm(100) == 29
        assert count_zeros_rvm(200) == len(find_zeros(0, 200))
        assert all(xi_integral_residual(t) < 1e-7 for t in (0, 5, 10, 20))
        for T in (30, 50, 100):
            signed, absolute = landau_integrals(T)
            assert signed < absolute


@pytest.mark.criterion(10, "cosine transforms of 100 random alternating kernels", 60)
def test_ac10_cosine_transform():
    rng = np.random.default_rng(SEED)
    with Budget(60):
        for _ in range(100):
            K = int(rng.integers(0, 9))
            mags = 10 ** rng.uniform(-2, 2, size=K + 1)
            kernel = FourierKernel(tuple(m if k % 2 == 0 else -m for k, m in enumerate(mags)))
            census = cosine_transform_census(kernel)
            assert census.all_real, census
            assert census.one_per_interval, census


@pytest.mark.criterion(11, "prime counting and the Mertens sum", 10)
def test_ac11_primes():
    with Budget(10):
        sv = sieve(10**6)
        assert sv.pi(10**6) == 78498 == segmented_prime_count(10**6)
        assert abs(mertens_sum(10**6, sv) - 0.2615) < 0.01
