"""
예외 계층

모든 예외는 ValueError를 상속하므로 기존 방식대로
``pytest.raises(ValueError)`` 로도 잡을 수 있습니다.
"""

from typing import Iterable


class DimRegError(ValueError):
    """패키지 공통 기본 예외"""


class DomainError(DimRegError):
    """인자가 연산의 정의역을 벗어난 경우"""


class GammaPoleError(DomainError):
    """감마 함수의 극점(0, -1, -2, ...)에서 호출된 경우"""


class IntegrabilityError(DimRegError):
    """원점에서 적분이 수렴하지 않는 경우"""


class QuadratureNonconvergence(DimRegError):
    """
    수치 적분이 허용 오차 내로 수렴하지 않은 경우

    Parameters
    ----------
    message : str
        오류 메시지
    partial_value : float
        중단 시점까지의 적분 값
    achieved_tolerance : float
        중단 시점의 상대 오차 추정치
    """

    def __init__(self, message: str, partial_value: float, achieved_tolerance: float):
        super().__init__(
            f"{message} (부분값={partial_value:.6g}, 달성 오차={achieved_tolerance:.3g})"
        )
        self.partial_value = partial_value
        self.achieved_tolerance = achieved_tolerance


class DegenerateGridError(DimRegError):
    """외삽 격자가 퇴화된 경우 (eps 값 중복 등)"""


class UnknownNameError(DimRegError):
    """알 수 없는 적분/다이어그램 이름"""

    def __init__(self, name: str, valid: Iterable[str]):
        self.name = name
        self.valid = tuple(valid)
        super().__init__(
            f"알 수 없는 이름입니다: '{name}'. 사용 가능한 이름: {', '.join(self.valid)}"
        )
