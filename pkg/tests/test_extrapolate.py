"""
ε → 0 외삽 테스트
"""

import numpy as np
import pytest
import sys
import os

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from models.errors import DegenerateGridError, DomainError
from models.extrapolate import DEFAULT_EPS_GRID, EpsSeries, grid_degree, richardson
from models.integrals import INTEGRAL_NAMES, evaluate_integral, reference_limit
from models.propagator import RegScheme


class TestEpsSeries:
    """ε 표본열 검증 테스트"""

    def test_from_values(self):
        """eps, 값 목록으로 생성"""
        series = EpsSeries.from_values(DEFAULT_EPS_GRID, [1.0, 2.0, 3.0, 4.0])
        assert len(series) == 4
        np.testing.assert_array_equal(series.eps, np.array(DEFAULT_EPS_GRID))
        np.testing.assert_array_equal(series.values, np.array([1.0, 2.0, 3.0, 4.0]))

    def test_too_few_samples(self):
        """표본은 최소 3개"""
        with pytest.raises(DomainError):
            EpsSeries.from_values([0.2, 0.1], [1.0, 1.0])

    def test_duplicate_eps(self):
        """중복된 ε"""
        with pytest.raises(DegenerateGridError):
            EpsSeries.from_values([0.2, 0.1, 0.1], [1.0, 1.0, 1.0])

    def test_not_decreasing(self):
        """증가하는 ε"""
        with pytest.raises(DomainError):
            EpsSeries.from_values([0.05, 0.1, 0.2], [1.0, 1.0, 1.0])

    @pytest.mark.parametrize("grid", [(0.2, 0.15, 0.1), (0.4, 0.05, 0.025)])
    def test_ratio_bounds(self, grid):
        """이웃 비율 [1.5, 4]"""
        with pytest.raises(ValueError):
            EpsSeries.from_values(grid, [1.0, 1.0, 1.0])

    def test_length_mismatch(self):
        """목록 길이 불일치"""
        with pytest.raises(DomainError):
            EpsSeries.from_values([0.2, 0.1, 0.05], [1.0, 1.0])


class TestRichardson:
    """다항식 외삽 테스트"""

    def test_quadratic_is_exact(self):
        """2차 다항식은 정확히 외삽"""
        eps = np.array(DEFAULT_EPS_GRID)
        values = 0.5 + 0.3 * eps - 2.0 * eps ** 2
        limit, err = richardson(EpsSeries.from_values(eps, values), degree=2)
        assert limit == pytest.approx(0.5, abs=1e-12)
        assert err == pytest.approx(abs(0.5 - (0.5 - 2.0 * 0.05 * 0.025)), rel=1e-6)

    def test_cubic_with_full_grid(self):
        """3차 다항식은 네 표본으로 정확히 외삽"""
        eps = np.array(DEFAULT_EPS_GRID)
        values = -0.0625 + eps - eps ** 2 + 4.0 * eps ** 3
        limit, _ = richardson(EpsSeries.from_values(eps, values), degree=3)
        assert limit == pytest.approx(-0.0625, abs=1e-12)

    def test_constant_series(self):
        """상수 표본열의 오차 추정치는 0"""
        limit, err = richardson(EpsSeries.from_values([0.2, 0.1, 0.05], [0.25, 0.25, 0.25]))
        assert limit == pytest.approx(0.25, abs=1e-15)
        assert err == pytest.approx(0.0, abs=1e-15)

    def test_uses_smallest_eps(self):
        """가장 작은 ε 표본만 사용"""
        eps = [0.2, 0.1, 0.05, 0.025]
        values = [99.0, 1.0 + 0.1, 1.0 + 0.05, 1.0 + 0.025]
        limit, err = richardson(EpsSeries.from_values(eps, values), degree=1)
        assert limit == pytest.approx(1.0, abs=1e-12)
        assert err == pytest.approx(0.025, abs=1e-12)

    @pytest.mark.parametrize("degree", [0, 3])
    def test_degree_bounds(self, degree):
        """1 <= degree <= 표본 수 - 1"""
        series = EpsSeries.from_values([0.2, 0.1, 0.05], [1.0, 2.0, 3.0])
        with pytest.raises(DomainError):
            richardson(series, degree=degree)

    @pytest.mark.parametrize("n_samples, expected", [(3, 2), (4, 3), (6, 3)])
    def test_grid_degree(self, n_samples, expected):
        """검증 그리드 차수 min(3, 표본 수 - 1)"""
        assert grid_degree(n_samples) == expected
        with pytest.raises(DomainError):
            grid_degree(2)


class TestCatalogueImprovement:
    """적분 카탈로그에서 2차 외삽이 1차 외삽보다 나쁘지 않음"""

    # 수치 적분 잡음 수준
    NOISE_FLOOR = 1e-8

    @pytest.mark.parametrize("name", INTEGRAL_NAMES)
    def test_degree_two_not_worse(self, name):
        """기본 격자에서 |c₀(2) - 기준| <= |c₀(1) - 기준| + 잡음 수준"""
        values = [evaluate_integral(name, RegScheme(m=1.0, eps=eps)).quadrature.value
                  for eps in DEFAULT_EPS_GRID]
        series = EpsSeries.from_values(DEFAULT_EPS_GRID, values)
        reference = reference_limit(name, 1.0)
        linear, _ = richardson(series, degree=1)
        quadratic, _ = richardson(series, degree=2)
        assert abs(quadratic - reference) <= abs(linear - reference) + self.NOISE_FLOOR


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
