class DomainError(ValueError):
    """Argument outside the domain of a model function."""


class EstimationError(RuntimeError):
    """Parameter estimation failed.

    ``last_iterate`` holds the final ``(a, b)`` pair reached, when there is one.
    """

    def __init__(self, message, last_iterate=None, diagnostics=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.diagnostics = diagnostics or {}


class ConfigError(ValueError):
    """Invalid run configuration.

    ``problems`` lists every ``(key, line, message)`` found; ``key`` and
    ``line`` refer to the first one.
    """

    def __init__(self, key, message=None, line=None, problems=None):
        if problems is None:
            problems = [(key, line, message)]
        self.problems = list(problems)
        self.key, self.line = self.problems[0][0], self.problems[0][1]
        super().__init__("; ".join(
            f"{k}{f' (line {ln})' if ln is not None else ''}: {msg}" for k, ln, msg in self.problems))
