class InstanceError(ValueError):
    """Malformed or out-of-range input."""


class ParseError(InstanceError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class EngineMismatch(ValueError):
    """The chosen engine cannot handle this kind of instance."""


class OracleScaleExceeded(InstanceError):
    def __init__(self, n, cap):
        super().__init__(f"oracle scale exceeded: n={n} > cap={cap}")
        self.n = n
        self.cap = cap
