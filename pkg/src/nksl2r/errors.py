"""Exception types shared across the package."""


class GeometryError(Exception):
    """Base class for all domain errors raised by this package."""


class BaseMismatch(GeometryError):
    """Two tangent vectors were combined at different base points."""


class NotTangent(GeometryError):
    """An ambient vector failed the tangency test at its base point."""


class OutOfDomain(GeometryError):
    """A surface evaluation or stencil left the parameter rectangle."""


class DegenerateInducedMetric(GeometryError):
    """The induced first fundamental form is singular or not Lorentzian."""


class NotSelfAdjoint(GeometryError):
    """An operator is not symmetric with respect to the given Gram matrix."""


class InadmissibleParams(GeometryError):
    """Parameters outside the admissible range of a catalog entry."""


class NoRealSolution(GeometryError):
    """A congruency equation has no real root for the requested angle."""


class InvalidGroupElement(GeometryError):
    """A matrix does not lie on the unit-determinant quadric."""


class NotOnHyperquadric(GeometryError):
    """A coordinate vector violates the quadric constraint of a chart."""


class DegenerateDistribution(GeometryError):
    """The tangent frame cannot be normalized; the distribution collapses."""


class InconsistentAngle(GeometryError):
    """The extracted angle components fail the unit-circle constraint."""
