"""Exception hierarchy shared by all solver and generator modules."""


class TreeswapError(Exception):
    """Base class for every error raised by this package."""


class NotATree(TreeswapError):
    """Edge list is not a tree (wrong edge count, disconnected, duplicate edge)."""


class InvalidInstance(TreeswapError):
    """Placement is not a bijection, or colour/weight tables are malformed."""


class ColourCountMismatch(InvalidInstance):
    """Some colour labels a different number of tokens than vertices."""


class NonEdgeSwap(TreeswapError):
    """A swap sequence names a vertex pair that is not a tree edge."""


class ColouredInstance(TreeswapError):
    """Operation needs distinct token colours but colours repeat."""


class TooLarge(TreeswapError):
    """Instance exceeds the explicit-search size cap."""


class Unreachable(TreeswapError):
    """No goal configuration is reachable (only possible under move restrictions)."""


class NotAPath(TreeswapError):
    """Solver requires a path tree."""


class NotAStar(TreeswapError):
    """Solver requires a star tree."""


class NotABroom(TreeswapError):
    """Solver requires a broom tree."""


class TraceMismatch(TreeswapError):
    """Broom swap-count formula disagrees with the measured count."""


class OddK(TreeswapError):
    """Construction parameter k must be even."""


class EvenB(TreeswapError):
    """Construction parameter b must be odd."""


class NotACover(TreeswapError):
    """Vertex set does not cover every edge, or has the wrong size."""


class OverBudget(TreeswapError):
    """Swap sequence exceeds the reduction's cost budget."""


class NotSorted(TreeswapError):
    """Swap sequence does not reach a goal configuration."""


class InstanceFormatError(TreeswapError):
    """Instance or solution file failed to parse."""
