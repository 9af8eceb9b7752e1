"""Exception types shared across the package.

The CLI maps these onto process exit codes (parse error 1, precondition
error 2, resource budget error 3), so library code should raise the most
specific one that applies.
"""


class ParseError(ValueError):
    """Malformed input text (graph6 string, edge list, family spec)."""


class PreconditionError(ValueError):
    """Structurally valid input outside an operation's domain.

    Examples: disconnected graph handed to a Wiener sum, k outside 2..n,
    family parameters out of range.
    """


class ResourceBudgetError(RuntimeError):
    """An instance exceeds a documented enumeration or search budget.

    The message always names the budget that was hit, so callers can tell
    a too-large instance apart from a bug.
    """
