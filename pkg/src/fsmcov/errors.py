"""Exception hierarchy shared by every fsmcov module."""


class FsmCovError(Exception):
    """Base class for all fsmcov errors."""


class SchemaError(FsmCovError):
    """A graph, suite or criterion document is malformed."""


class ModelError(FsmCovError):
    """The graph violates a structural invariant."""


class DeterminismError(ModelError):
    """Two edges leaving one vertex share an input label."""


class UnknownEdgeError(FsmCovError):
    pass


class InvalidPathError(FsmCovError):
    """An edge sequence is not a walk in the graph."""


class CyclicGraphError(FsmCovError):
    """All-path requirements were requested on a graph with a cycle."""


class ResourceError(FsmCovError):
    """An enumeration exceeded its configured cap."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class CriterionInapplicableError(FsmCovError):
    pass


class MealyLabelsMissingError(CriterionInapplicableError):
    pass


class IndistinguishableStatesError(FsmCovError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class UnsatisfiableError(FsmCovError):
    """No suite under the requested anchoring can cover a requirement."""


class UnknownPairError(FsmCovError):
    pass


class ConfigError(FsmCovError):
    pass
