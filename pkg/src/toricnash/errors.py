"""Error taxonomy shared by the kernel and the CLI exit-code mapping."""


class ResourceCapExceeded(RuntimeError):
    """A configured desk-scale cap was hit (CLI exit code 3).

    Raised instead of silently attempting inputs that would blow up the
    combinatorics (parallelepiped volume, subset counts, subdivision steps).
    """


class KernelInvariantError(RuntimeError):
    """An internal consistency check failed (CLI exit code 4).

    This means a bug or an input that violates a precondition we could not
    detect up front (e.g. a fan that stops being a fan mid-subdivision).
    """
