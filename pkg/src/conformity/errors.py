"""Exception hierarchy; each class carries the CLI exit status it maps to."""


class ConformityError(Exception):
    exit_code = 2
    kind = "error"


class ParameterError(ConformityError, ValueError):
    exit_code = 1
    kind = "parameter"


class DataError(ConformityError, ValueError):
    exit_code = 2
    kind = "data"


class ParseError(DataError):
    kind = "parse"


class GenerationError(ConformityError):
    exit_code = 3
    kind = "generation"

    def __init__(self, message, achieved_r=None):
        super().__init__(message)
        self.achieved_r = achieved_r
