"""
Exception hierarchy shared by every app.

Validation problems derive from ValueError and budget problems from
MemoryError so callers that only know the builtins still catch them.
Management commands map ValidationError → exit 2 and ResourceError → exit 3.
"""


class EffvolError(Exception):
    """Root of all project errors."""


class ValidationError(EffvolError, ValueError):
    """An input, spec or parameter combination was rejected."""


class GraphSpecError(ValidationError):
    """A device description references a missing node or repeats one."""


class CircuitParseError(ValidationError):
    """A serialized circuit or device document could not be read."""

    def __init__(self, message: str, *, field: str | None = None) -> None:
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class NonCliffordGateError(ValidationError):
    """A gate outside the Clifford group reached the stabilizer engine."""

    def __init__(self, message: str, *, op_index: int | None = None) -> None:
        self.op_index = op_index
        if op_index is not None:
            message = f"op #{op_index}: {message}"
        super().__init__(message)


class StaleConeError(ValidationError):
    """A light cone was applied to a circuit other than the one it came from."""


class ResourceError(EffvolError, MemoryError):
    """A dense buffer or tensor would exceed the configured memory budget."""


__all__ = [
    "CircuitParseError",
    "EffvolError",
    "GraphSpecError",
    "NonCliffordGateError",
    "ResourceError",
    "StaleConeError",
    "ValidationError",
]
