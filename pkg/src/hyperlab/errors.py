# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

from typing import Any, Optional


class HyperlabError(Exception):
    "Base class of all errors raised by hyperlab"


class InvalidParameterError(HyperlabError, ValueError):
    "Raised if a parameter violates a documented constraint"

    def __init__(self, constraint: str) -> None:
        self.constraint = constraint
        super().__init__(constraint)


class ZeroVectorError(HyperlabError, ValueError):
    "Raised if a first-order element has only zero coefficients"


class DegenerateFormError(HyperlabError):
    "Raised if a second-order form is proportional to the Casimir matrix"

    def __init__(self, matrix: Any) -> None:
        self.matrix = matrix
        super().__init__("form is proportional to the Casimir matrix")


class NumericalInstabilityError(HyperlabError):
    "Raised if a branch predicate lies inside the tolerance band around zero"

    def __init__(self, predicate: str, value: float) -> None:
        self.predicate = predicate
        self.value = value
        super().__init__(f"{predicate} = {value:.3e} is inside the tolerance band")


class ReplayMismatchError(HyperlabError):
    "Raised if replaying an automorphism word misses the canonical form"

    def __init__(self, residual: float) -> None:
        self.residual = residual
        super().__init__(f"replay residual {residual:.3e}")


class DivergenceError(HyperlabError):
    "Raised if a complete elliptic integral is requested at k = 1"


class PoleError(HyperlabError):
    "Raised if a shifted Jacobi triple is evaluated at a pole"


class OutOfDomainError(HyperlabError, ValueError):
    "Raised if a chart is evaluated outside of its domain"

    def __init__(self, chart_id: str, inequality: str) -> None:
        self.chart_id = chart_id
        self.inequality = inequality
        super().__init__(f"{chart_id}: violates {inequality}")


class AxisSingularityError(HyperlabError):
    "Raised if the classical symbol is requested on the axis u1 = u2 = 0"


class ProjectionPoleError(HyperlabError):
    "Raised if a Beltrami projection hits its pole"


class ChartNotOrthogonalError(HyperlabError):
    "Raised if the Liouville check is requested for a nonorthogonal chart"

    def __init__(self, chart_id: str) -> None:
        self.chart_id = chart_id
        super().__init__(chart_id)


class NonzeroCommutatorError(HyperlabError):
    "Raised if a commutator which has to vanish leaves terms behind"

    def __init__(self, operator: Any) -> None:
        self.operator = operator
        super().__init__(f"nonzero commutator: {operator}")


class NoContractionError(HyperlabError):
    "Raised if a catalogued case has no contraction limit"

    def __init__(self, case_id: str, reason: str) -> None:
        self.case_id = case_id
        self.reason = reason
        super().__init__(f"{case_id}: {reason}")


class OperatorLimitError(HyperlabError):
    "Raised if a scaled operator has no limit or misses its target"

    def __init__(self, message: str, terms: Optional[Any] = None) -> None:
        self.terms = terms
        super().__init__(message)


class UnknownIdError(HyperlabError, KeyError):
    "Raised if a chart, case, orbit or suite id is not registered"

    def __init__(self, kind: str, identifier: str) -> None:
        self.kind = kind
        self.identifier = identifier
        super().__init__(f"unknown {kind} `{identifier}`")


class UsageError(HyperlabError):
    "Raised if the command line cannot be parsed"

    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(message)
