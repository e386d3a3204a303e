"""Exception hierarchy.

Every error raised on bad input derives from :class:`SlopelabError` (a
``ValueError``).  Errors that signal a broken mathematical expectation, as
opposed to bad input, derive from :class:`ExpectationFailure`; the CLI maps
the two families to exit codes 1 and 2.
"""


class SlopelabError(ValueError):
    """Invalid input or an operation outside its domain."""


class ProfileError(SlopelabError):
    """A (g, q_f) pair violating g >= 2 or 0 <= q_f <= (g+1)/2."""


class IndexVectorError(SlopelabError):
    """A singularity index vector with a negative entry at i >= 3 or wrong length."""


class LocallyTrivial(SlopelabError):
    """chi_f = 0: the slope is undefined."""


class NegativeChi(SlopelabError):
    """chi_f < 0: the index vector lies outside the geometric region."""


class ForestError(SlopelabError):
    """A singularity forest violating a node invariant.

    ``path`` names the offending node, e.g. ``fiber[0].root[1].child[0]``.
    """

    def __init__(self, message, path=None):
        super().__init__(message if path is None else f"{path}: {message}")
        self.path = path


class ExpectationFailure(ArithmeticError):
    """A computed value disagreeing with what the theory guarantees."""


class S2Mismatch(ExpectationFailure):
    """An explicit s_2 disagreeing with the value recovered from n."""

    def __init__(self, explicit, derived):
        super().__init__(f"explicit s2 = {explicit} but n gives s2 = {derived}")
        self.explicit = explicit
        self.derived = derived


class Unbounded(ExpectationFailure):
    """The cone program has no finite minimum."""


class Infeasible(ExpectationFailure):
    """The cone program has no feasible point."""


class CrossCheckFailure(ExpectationFailure):
    """Two independent computations of the same quantity disagree."""
