"""
Exceptions raised by imatch
"""


class ImatchError(Exception):
    """ Base class for everything imatch raises on purpose """


class PreconditionError(ImatchError, ValueError):
    """
    An operation was called outside of its stated precondition, e.g. an even
    clique size for a line graph cycle or a witness that is not a clique.
    """


class ConfigError(PreconditionError):
    """ A budget, seed or config file entry that cannot be used """


class GraphParseError(ImatchError, ValueError):
    """
    Malformed DIMACS or JSON input.

    :param message: what went wrong
    :param lineno: 1-based line number of the offending line, 0 if the problem
                   is not tied to a single line
    """

    def __init__(self, message, lineno=0):
        self.lineno = lineno
        if lineno:
            message = 'line %d: %s' % (lineno, message)
        super().__init__(message)


class PathRepairError(ImatchError):
    """
    Hamiltonian path construction gave up. ``partial`` holds the longest
    valid prefix that was found so the failing instance can be inspected.
    """

    def __init__(self, message, partial=()):
        self.partial = list(partial)
        super().__init__(message)


class ReductionSoundnessError(ImatchError):
    """
    A structural fact the hardness reduction relies on did not hold for a
    witness read back from the reduced graph.
    """


class VersionMismatchError(ImatchError):
    """ A sidecar, bundle or report carries a different format tag """

    def __init__(self, found, expected):
        self.found = found
        self.expected = expected
        super().__init__('format version %r does not match %r'
                         % (found, expected))
