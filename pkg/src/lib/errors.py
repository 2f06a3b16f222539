from collections.abc import Iterable


class GraphError(Exception):
    """Base class for knowledge graph errors"""


class FrozenGraph(GraphError, RuntimeError):
    """Raised when a frozen graph is modified"""


class GraphNotFrozen(GraphError, RuntimeError):
    """Raised when analytics are requested on a graph still under construction"""


class DuplicateConflict(GraphError, ValueError):
    """Raised when an entity id is redefined with a different name or type"""


class SelfLoop(GraphError, ValueError):
    """Raised for a relation whose source and destination are the same entity"""


class SameEndpoints(GraphError, ValueError):
    """Raised for a path query from a node to itself"""


class MalformedHeader(GraphError, ValueError):
    """Raised when an input file does not start with the expected header"""


class NoConvergence(GraphError, ArithmeticError):
    """Raised when an iterative solver runs out of iterations"""


class UnknownEntity(GraphError, KeyError):
    """
    Raised when one or more entity ids are not in the graph.

    :param ids: The missing ids, kept sorted on the `ids` attribute
    """

    def __init__(self, ids: str | Iterable[str]):
        if isinstance(ids, str):
            ids = [ids]
        self.ids: list[str] = sorted(set(ids))
        super().__init__(self.ids)

    def __str__(self) -> str:
        return "Unknown entity id(s): " + ", ".join(self.ids)
