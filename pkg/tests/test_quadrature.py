"""
반지름 적분 테스트
"""

import math

import mpmath
import numpy as np
import pytest
import sys
import os

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from models.errors import DomainError, IntegrabilityError, QuadratureNonconvergence
from models.quadrature import (
    ANALYTIC,
    QUADRATURE,
    IntegralResult,
    RadialIntegrand,
    adaptive_integrate,
    analytic_result,
    besselk_power_series,
    evaluate_power_series,
    integrand_power_series,
    integrate,
    integrate_continued,
    linear_combination,
    origin_exponent,
)
from models.specfun import Z_MAX, besselk, gamma


def rel_err(value, reference):
    return abs(value - reference) / abs(reference)


def bessel_square_moment(nu):
    """∫₀^∞ z K_ν(z)² dz = Γ(1+ν)Γ(1-ν)/2"""
    return 0.5 * gamma(1.0 + nu) * gamma(1.0 - nu)


def singular_integrand(eps):
    D = 1.0 - eps
    return RadialIntegrand(1.0, 2.0 - D, [(1.0 - D / 2.0, 1), (D / 2.0, 3)])


class TestIntegralResult:
    """적분 결과 값 객체 테스트"""

    def test_validation(self):
        """방법 태그와 오차 추정치 검증"""
        with pytest.raises(ValueError):
            IntegralResult(1.0, 0.0, "continued")
        with pytest.raises(ValueError):
            IntegralResult(1.0, -1e-9, QUADRATURE)
        with pytest.raises(ValueError):
            IntegralResult(1.0, math.inf, QUADRATURE)

    def test_quadrature_error_is_positive(self):
        """수치 적분 결과의 오차는 0 이 아님"""
        result = IntegralResult(0.25, 0.0, QUADRATURE)
        assert result.abs_error_estimate > 0

    def test_analytic_result(self):
        """닫힌 형태 결과"""
        result = analytic_result(0.5)
        assert result.method == ANALYTIC
        assert 0 < result.abs_error_estimate < 1e-15
        assert result.relative_error < 1e-14

    def test_scaled(self):
        """배율 적용"""
        result = IntegralResult(2.0, 1e-9, QUADRATURE).scaled(-3.0)
        assert result.value == -6.0
        assert result.abs_error_estimate == pytest.approx(3e-9)
        assert result.method == QUADRATURE

    def test_linear_combination_tag(self):
        """수치 결과가 섞이면 quadrature"""
        exact = analytic_result(1.0)
        numeric = IntegralResult(2.0, 1e-10, QUADRATURE)
        assert linear_combination([(1.0, exact)], constant=0.5).method == ANALYTIC
        combined = linear_combination([(2.0, exact), (-1.0, numeric)], constant=0.5)
        assert combined.method == QUADRATURE
        assert combined.value == pytest.approx(0.5)
        assert combined.abs_error_estimate >= 1e-10


class TestRadialIntegrand:
    """피적분 함수 기술자 테스트"""

    @pytest.mark.parametrize("alpha, factors, expected", [
        (1.0, [(0.9, 2)], -0.8),
        (1.0, [(0.5, 2)], 0.0),
        (1.0, [(0.55, 2)], -0.1),
        (1.1, [(0.55, 1), (0.45, 3)], -0.8),
    ])
    def test_origin_exponent(self, alpha, factors, expected):
        """p₀ = alpha - Σ power·order"""
        f = RadialIntegrand(1.0, alpha, factors)
        assert origin_exponent(f) == pytest.approx(expected, abs=1e-14)

    def test_validation(self):
        """차수와 거듭제곱 검증"""
        with pytest.raises(DomainError):
            RadialIntegrand(1.0, 1.0, [(2.0, 1)])
        with pytest.raises(DomainError):
            RadialIntegrand(1.0, 1.0, [(0.5, 0)])
        with pytest.raises(DomainError):
            RadialIntegrand(1.0, 1.0, [])

    def test_evaluation(self):
        """z^alpha ∏ K^p 직접 계산과 비교"""
        f = RadialIntegrand(2.0, 1.5, [(0.45, 1), (0.55, 2)])
        z = np.array([0.01, 0.7, 4.0])
        expected = 2.0 * z ** 1.5 * besselk(0.45, z) * besselk(0.55, z) ** 2
        np.testing.assert_allclose(f(z), expected, rtol=1e-13)

    def test_tail_cutoff(self):
        """포락선이 충분히 작아지는 상한"""
        f = RadialIntegrand(1.0, 1.0, [(0.5, 2)])
        cutoff = f.tail_cutoff()
        assert 15.0 < cutoff < 30.0
        assert f.envelope(cutoff) <= 1e-18 * f.envelope(1.0)
        slow = RadialIntegrand(1.0, 30.0, [(0.5, 1)])
        assert slow.tail_cutoff() <= Z_MAX


class TestAdaptiveIntegrate:
    """적응 가우스-르장드르 적분 테스트"""

    def test_polynomial(self):
        """다항식은 패널 하나로 정확"""
        result = adaptive_integrate(lambda x: x ** 5, 0.0, 1.0)
        assert result.value == pytest.approx(1.0 / 6.0, rel=1e-14)
        assert result.method == QUADRATURE

    def test_oscillatory(self):
        """∫₀^{10π} sin² = 5π"""
        result = adaptive_integrate(lambda x: np.sin(x) ** 2, 0.0, 10.0 * math.pi, rel_tol=1e-12)
        assert result.value == pytest.approx(5.0 * math.pi, rel=1e-11)

    def test_invalid_interval(self):
        """b <= a"""
        with pytest.raises(DomainError):
            adaptive_integrate(np.exp, 1.0, 1.0)

    def test_panel_limit(self):
        """패널 수 한계에서 부분값과 함께 실패"""
        with pytest.raises(QuadratureNonconvergence) as info:
            adaptive_integrate(lambda x: np.abs(x - 0.3) ** -0.99, 0.0, 1.0, rel_tol=1e-12, max_panels=20)
        assert info.value.partial_value > 0
        assert info.value.achieved_tolerance > 1e-12


class TestIntegrate:
    """(0, ∞) 반지름 적분 테스트"""

    def test_half_order(self):
        """∫ z K²_{1/2} = π/4"""
        result = integrate(RadialIntegrand(1.0, 1.0, [(0.5, 2)]), rel_tol=1e-10)
        assert rel_err(result.value, math.pi / 4.0) <= 1e-9
        assert result.abs_error_estimate <= 1e-8

    @pytest.mark.parametrize("eps", [0.2, 0.1, 0.05])
    def test_bessel_square_moment(self, eps):
        """∫ z K²_{1-D/2} 닫힌 형태와 1e-8 이내 일치"""
        nu = 1.0 - (1.0 - eps) / 2.0
        result = integrate(RadialIntegrand(1.0, 1.0, [(nu, 2)]), rel_tol=1e-10)
        assert rel_err(result.value, bessel_square_moment(nu)) <= 1e-8

    @pytest.mark.parametrize("nu", [0.45, 0.475])
    def test_gradient_moment(self, nu):
        """∫ z K²_{D/2}"""
        result = integrate(RadialIntegrand(1.0, 1.0, [(nu, 2)]), rel_tol=1e-10)
        assert rel_err(result.value, bessel_square_moment(nu)) <= 1e-8

    def test_mellin_reference(self):
        """∫ z^{s-1} K_ν = 2^{s-2} Γ((s-ν)/2) Γ((s+ν)/2), s = 0.7, ν = 0.45"""
        s, nu = 0.7, 0.45
        expected = float(2 ** (s - 2) * mpmath.gamma((s - nu) / 2) * mpmath.gamma((s + nu) / 2))
        result = integrate(RadialIntegrand(1.0, s - 1.0, [(nu, 1)]), rel_tol=1e-10)
        assert rel_err(result.value, expected) <= 1e-8

    def test_divergent_integrand(self):
        """p₀ <= -1 이면 적분 불가"""
        with pytest.raises(IntegrabilityError):
            integrate(RadialIntegrand(1.0, 0.0, [(0.55, 2)]))
        with pytest.raises(ValueError):
            integrate(RadialIntegrand(1.0, 0.1, [(0.55, 2)]))

    def test_rel_tol_range(self):
        """rel_tol ∈ [1e-12, 1e-4]"""
        f = RadialIntegrand(1.0, 1.0, [(0.5, 2)])
        with pytest.raises(DomainError):
            integrate(f, rel_tol=1e-3)
        with pytest.raises(DomainError):
            integrate(f, rel_tol=1e-14)

    def test_cutoff_doubling(self):
        """꼬리 상한을 두 배로 늘려도 값이 변하지 않음"""
        f = RadialIntegrand(1.0, 2.1, [(0.55, 4)])
        base = integrate(f, rel_tol=1e-10)
        doubled = integrate(f, rel_tol=1e-10, cutoff_factor=2.0)
        assert rel_err(doubled.value, base.value) <= 1e-8

    def test_singular_growth(self):
        """I_D 피적분 함수의 적분은 Γ(2ε) 처럼 증가"""
        wide = integrate(singular_integrand(0.2), rel_tol=1e-10).value
        narrow = integrate(singular_integrand(0.1), rel_tol=1e-10).value
        assert narrow / wide == pytest.approx(gamma(0.2) / gamma(0.4), rel=0.25)

    def test_grading_converges_at_small_eps(self):
        """원점 치환을 쓰면 eps = 0.01 에서도 수렴"""
        result = integrate(singular_integrand(0.01), rel_tol=1e-8)
        assert math.isfinite(result.value)
        assert result.value > 0
        assert result.relative_error <= 1e-8

    def test_without_grading_fails(self):
        """원점 치환 없이 p₀ = -0.98 이면 수렴하지 않음"""
        with pytest.raises(QuadratureNonconvergence) as info:
            integrate(singular_integrand(0.01), rel_tol=1e-8, grading=False)
        assert info.value.achieved_tolerance > 1e-8


class TestPowerSeries:
    """원점 멱급수 테스트"""

    @pytest.mark.parametrize("nu", [0.45, 0.55, 1.45])
    @pytest.mark.parametrize("z", [0.1, 0.5, 1.0])
    def test_besselk_series(self, nu, z):
        """급수 합이 K_ν(z) 와 일치"""
        series = dict(besselk_power_series(nu))
        assert rel_err(evaluate_power_series(series, z), besselk(nu, z)) <= 1e-11

    def test_leading_term(self):
        """첫 항 (1/2)Γ(ν)2^ν z^{-ν}"""
        exponent, coeff = besselk_power_series(0.45)[0]
        assert exponent == pytest.approx(-0.45)
        assert coeff == pytest.approx(0.5 * gamma(0.45) * 2.0 ** 0.45, rel=1e-13)

    def test_integer_order(self):
        """정수 차수는 로그 항이 있어 지원하지 않음"""
        with pytest.raises(DomainError):
            besselk_power_series(1.0)

    def test_integrand_series(self):
        """피적분 함수 급수가 직접 계산과 일치"""
        f = RadialIntegrand(2.0, 0.5, [(0.45, 1), (0.55, 3)])
        series = integrand_power_series(f, f.origin_exponent() + 40.0)
        for z in [0.05, 0.3, 0.8]:
            assert rel_err(evaluate_power_series(series, z), float(f(np.array([z]))[0])) <= 1e-10


class TestIntegrateContinued:
    """해석 접속 적분 테스트"""

    def test_convergent_matches_integrate(self):
        """수렴하는 경우 일반 적분과 같음"""
        result = integrate_continued([RadialIntegrand(1.0, 1.0, [(0.5, 2)])], rel_tol=1e-10)
        assert result.method == QUADRATURE
        assert rel_err(result.value, math.pi / 4.0) <= 1e-8

    def test_mellin_continuation(self):
        """s = 0.3 < ν 에서도 2^{s-2} Γ((s-ν)/2) Γ((s+ν)/2)"""
        s, nu = 0.3, 0.5
        expected = float(2 ** (s - 2) * mpmath.gamma((s - nu) / 2) * mpmath.gamma((s + nu) / 2))
        assert expected < 0
        result = integrate_continued([RadialIntegrand(1.0, s - 1.0, [(nu, 1)])], rel_tol=1e-10)
        assert rel_err(result.value, expected) <= 1e-8

    def test_cancelling_pair(self):
        """K_{D/2}K_{1-D/2} + (D/2) z^{-1} K²_{D/2} 의 z^{-1} 항 상쇄"""
        D = 0.95
        terms = [
            RadialIntegrand(1.0, 0.0, [(D / 2.0, 1), (1.0 - D / 2.0, 1)]),
            RadialIntegrand(D / 2.0, -1.0, [(D / 2.0, 2)]),
        ]
        result = integrate_continued(terms, rel_tol=1e-10)
        assert math.isfinite(result.value)
        assert result.value < 0

    def test_uncancelled_log(self):
        """z^{-1} 항이 남으면 로그 발산"""
        with pytest.raises(IntegrabilityError):
            integrate_continued([RadialIntegrand(1.0, -0.5, [(0.5, 1)])])

    def test_empty(self):
        """빈 목록"""
        with pytest.raises(DomainError):
            integrate_continued([])


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
