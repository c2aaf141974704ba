"""Exception types raised across the package."""


class GraphError(ValueError):
    """Base class for task-graph construction problems."""


class CycleError(GraphError):
    """The node graph contains a directed cycle."""


class ArityError(GraphError):
    """An operator has the wrong inputs, ports or attribute types."""


class CatalogError(GraphError):
    """Unknown operator kind, bad node count, or a malformed task document."""


class UnknownTaskError(KeyError):
    """Requested task name is not in the catalog."""


class PlacementError(RuntimeError):
    """No non-overlapping location could be found within the retry budget."""


class GenerationRetryExceeded(RuntimeError):
    """Episode generation kept failing placement after the retry budget."""


class ChecksumError(RuntimeError):
    """A dataset shard does not match its manifest checksum."""


class FormatVersionError(RuntimeError):
    """The dataset on disk uses an unsupported format version."""
