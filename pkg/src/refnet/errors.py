"""Exception hierarchy.

Two families map onto CLI exit codes: ``ValidationError`` (bad input, exit 2)
and ``AlgorithmError`` (a contract violated by an otherwise well-formed
input, exit 3).
"""


class RefnetError(Exception):
    exit_code = 1


class ValidationError(RefnetError, ValueError):
    exit_code = 2


class AlgorithmError(RefnetError):
    exit_code = 3


class BadLabel(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TimestampError(ParseError):
    pass


class ConfigError(ValidationError):
    pass


class FormatError(ValidationError):
    pass


class EmptyGraph(AlgorithmError):
    pass


class NoOpError(AlgorithmError):
    pass


class NodeNotFound(AlgorithmError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class PartitionMismatch(AlgorithmError):
    pass


class NoCandidates(AlgorithmError):
    pass


class DirectedInputError(AlgorithmError):
    pass
