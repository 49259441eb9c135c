"""Exception types raised by the engine."""


class GeometryError(ValueError):
    """A terminal sits in or behind the RIS plane, or a layout is malformed."""


class ModelDomainError(ValueError):
    """Input lies outside the element-pattern model family."""


class ConfigError(ValueError):
    """Scenario or sweep file failed validation."""


class ResourceCapError(RuntimeError):
    """A sweep would exceed the configured element budget."""
