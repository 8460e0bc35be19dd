class ParameterError(ValueError):
    """Invalid model parameters or matrix arguments."""


class InstanceTooSmallError(ValueError):
    """The network has too few nodes for the requested statistic."""


class GuardError(ValueError):
    """An exhaustive (brute-force) computation was asked for on too large an instance."""


class DegenerateModelError(ValueError):
    """The model makes a requested quantity undefined (zero matrix, 0/1 probabilities)."""


class ConfigError(ValueError):
    """Malformed or inconsistent experiment configuration."""


class EdgeListParseError(ValueError):
    """Malformed edge-list file; ``lineno`` is 1-based, or None for whole-file problems."""

    def __init__(self, message, lineno=None, path=None):
        self.lineno = lineno
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)
