"""Exception hierarchy shared by the whole package.

The CLI maps these onto process exit codes: input errors exit with 1,
precondition and data-integrity errors with 2.
"""


class LocalSepError(Exception):
    """Base class for all errors raised by this package."""


class InputError(LocalSepError):
    """Malformed or out-of-range input: bad files, bad ids, bad weights."""


class PreconditionError(LocalSepError):
    """A documented precondition of an operation was violated by the caller."""


class DataIntegrityError(LocalSepError):
    """An internal consistency guarantee failed while assembling results.

    Raised for instance when a witness cycle for a local 2-separator cannot
    be constructed within the weight budget, which cannot happen on locally
    2-connected inputs.
    """
