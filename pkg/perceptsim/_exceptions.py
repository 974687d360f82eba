"""
Exceptions used throughout the package
"""

from enum import IntEnum


class ExitStatus(IntEnum):
    """
    Process exit codes. These are part of the command-line contract and must
    stay stable across versions.
    """
    SUCCESS = 0
    FINDINGS = 1
    USAGE = 2
    NUMERIC = 3


class PerceptsimError(Exception):
    """
    Base perceptsim exception
    """
    exit_code: ExitStatus = ExitStatus.USAGE

    def __init__(self, message: str = '', stage: str = None):
        super().__init__(message)
        self.stage = stage

    def __str__(self) -> str:
        message = super().__str__()
        if self.stage:
            return f'[{self.stage}] {message}'
        return message


class CommandError(PerceptsimError):
    """
    Raised when there is an error in the command-line arguments.
    """


class StudyParseError(PerceptsimError):
    """
    Raised when a study file is not valid JSON or does not follow the study
    file schema. The `path` attribute points at the offending key.
    """
    def __init__(self, message: str, path: str = '$', stage: str = None):
        super().__init__(f'{path}: {message}', stage=stage)
        self.path = path


class CohortFormatError(PerceptsimError):
    """
    Raised when a cohort CSV cannot be read back (missing columns, text in
    numeric fields, no rows).
    """


class ValidationFailed(PerceptsimError):
    """
    Raised when a study parsed correctly but violates one or more invariants.
    """
    exit_code = ExitStatus.FINDINGS

    def __init__(self, findings, stage: str = None):
        super().__init__(f'{len(findings)} validation finding(s)', stage=stage)
        self.findings = list(findings)


class DomainError(PerceptsimError, ValueError):
    """
    Raised when a numeric routine is called outside of its domain.
    """
    exit_code = ExitStatus.NUMERIC


class SingularityError(DomainError):
    """
    Raised when a design matrix is rank-deficient.
    """


class ConvergenceError(DomainError):
    """
    Raised when an iterative special-function evaluation does not converge.
    """
