"""Exception types raised across the package."""


class WedgeProbeError(Exception):
    """Base class for all package errors."""


class DegenerateCorner(WedgeProbeError):
    """Three corner points coincide or are collinear beyond tolerance."""


class CoincidentPoints(WedgeProbeError):
    """An arc or chord was requested over two coincident points."""


class InvalidOmega(WedgeProbeError):
    """Wedge angle outside the supported range (0, pi/2]."""


class DegeneratePolygon(WedgeProbeError):
    """Vertex list is not a strictly convex counter-clockwise polygon."""


class BudgetExceeded(WedgeProbeError):
    """A reconstruction used more probes than its guaranteed bound."""


class NarrowVertexEncountered(WedgeProbeError):
    """An algorithm that assumes no narrow vertices hit one."""


class OmegaMismatch(WedgeProbeError):
    """Algorithm requires a specific wedge angle the session does not have."""


class EpsilonViolated(WedgeProbeError):
    """A rotated-probe pair contradicted the epsilon separation promise."""


class InvalidParams(WedgeProbeError):
    """Adversary constructed with an unsupported (omega, n) combination."""


class InconsistencyFound(WedgeProbeError):
    """Transcript audit found an answer inconsistent with the final polygon."""

    def __init__(self, message: str, probe_index: int = -1):
        super().__init__(message)
        self.probe_index = probe_index


class Infeasible(WedgeProbeError):
    """Requested polygon configuration cannot exist."""
