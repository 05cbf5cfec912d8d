"""Exception types shared across the package."""


class ModelError(ValueError):
    """A representation, state, or argument violates a documented contract."""


class ClassificationError(RuntimeError):
    """A finite space handed to the classifier is not usable, for example
    because a successor function escapes it."""


class StateParseError(ValueError):
    """A serialized state is malformed. ``position`` is the character offset
    where parsing failed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ProblemDefinitionError(RuntimeError):
    """A successor function raised while the search was running."""


class SearchInvariantError(RuntimeError):
    """The search data structures reached a state that should be impossible."""


class ConfigError(ValueError):
    """A benchmark configuration is invalid; reported before any run starts."""
