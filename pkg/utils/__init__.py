"""검증 실행과 보고서 유틸리티 패키지"""

from .report import ReportDocument, render, to_csv, to_json
from .verification import RunConfig, VerificationEntry, resolve_threads, run_verification

__all__ = ['ReportDocument', 'render', 'to_csv', 'to_json',
           'RunConfig', 'VerificationEntry', 'resolve_threads', 'run_verification']
