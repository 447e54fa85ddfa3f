"""Exception types shared across the package.

The CLI maps these onto exit codes: bad inputs or malformed files exit 3,
numerical divergence during training exits 4, argument misuse exits 2.
"""


class DatasetError(Exception):
    """A dataset, model file, or derived input is unusable."""


class ParseError(DatasetError):
    """A dataset text file is malformed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DivergenceError(RuntimeError):
    """Training produced a non-finite objective."""
