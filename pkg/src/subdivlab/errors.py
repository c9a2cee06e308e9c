"""Exception hierarchy.

Every failure that a caller can act on derives from :class:`AnalysisError`;
the command line maps those to exit status 2.
"""


class AnalysisError(Exception):
    """A mask or test vector does not admit the requested analysis."""


class EigenvalueNotSimpleError(AnalysisError):
    """The eigenvalue 1 of the summed mask has a non-unique left eigenvector."""


class SingularRecursionError(AnalysisError):
    """``I - 2^j a(0)`` is singular, so a filter moment is not determined."""


class AmbiguousEigenvectorError(AnalysisError):
    """``2^-j`` is missing or has a multi-dimensional eigenspace in the transition matrix."""


class NormalizationFailure(AnalysisError):
    """The eigenvector has a vanishing normalizing moment."""


class InfeasibleDesignError(AnalysisError):
    """The linear design system has no solution."""


class ResourceLimitError(AnalysisError):
    """A subdivision level or sequence length exceeds the configured guard."""


class DegenerateInputError(AnalysisError):
    """Input is structurally valid but degenerate for the requested quantity."""
