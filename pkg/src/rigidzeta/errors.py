"""Error taxonomy.  Each class carries the CLI exit code it maps to."""


class RigidZetaError(Exception):
    exit_code = 10


class NotPrime(RigidZetaError):
    exit_code = 11


class ReducibleDefiningPolynomial(RigidZetaError):
    exit_code = 11


class PrecisionTooSmall(RigidZetaError):
    exit_code = 11


class NotAUnit(RigidZetaError):
    exit_code = 12


class SingularToPrecision(RigidZetaError):
    exit_code = 12


class ParseError(RigidZetaError):
    exit_code = 2


class CurveError(RigidZetaError):
    """Invalid curve input (shape, support, degenerate model)."""

    exit_code = 3


class NotMonicInY(CurveError):
    pass


class RadicalNotUnitLeading(CurveError):
    pass


class NoCofactor(CurveError):
    pass


class DegenerateCurve(CurveError):
    """d_x = 1 or genus 0: the zeta function is known in closed form."""


class EvenCharacteristic(CurveError):
    pass


class NotSquarefreeModP(CurveError):
    pass


class RPrimeNotInvertible(CurveError):
    pass


class AuditFailure(RigidZetaError):
    exit_code = 4

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SupportChangedModP(AuditFailure):
    """The lift has a monomial that vanishes modulo p, so it is not a lift
    with the same support as the reduction."""


class PipelineError(RigidZetaError):
    exit_code = 5


class NonConvergence(PipelineError):
    pass


class ShapeViolation(PipelineError):
    pass


class SystemSingular(PipelineError):
    pass


class RankDeficient(PipelineError):
    pass


class ValuationBreach(PipelineError):
    pass


class NotRational(PipelineError):
    pass


class BoundBreach(PipelineError):
    exit_code = 6


class NegativeCount(PipelineError):
    pass


class BudgetExceeded(RigidZetaError):
    exit_code = 7


class NoPrimitiveElement(RigidZetaError):
    exit_code = 7


class InconsistentCounts(RigidZetaError):
    exit_code = 7
