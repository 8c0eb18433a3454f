"""Exception hierarchy shared across the simulator.

Error families map to CLI exit codes: configuration and usage problems
(SchemaError, ParseError, ...) exit 1, filesystem problems exit 2, and
numerical aborts exit 3.
"""


class BevsimError(Exception):
    """Base class for every error raised by this package."""


class ParseError(BevsimError):
    """Input file is not syntactically valid (YAML, CSV)."""


class SchemaError(BevsimError):
    """A config value violates the schema; the message names the field path."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class UnknownModelError(BevsimError):
    """Model-selection string is not a registered key for its slot."""

    def __init__(self, slot: str, key: str, available):
        self.slot = slot
        self.key = key
        self.available = tuple(sorted(available))
        super().__init__(
            f"unknown {slot} model {key!r}; available: {', '.join(self.available)}"
        )


class FormatError(ParseError):
    """Tabular input (drive-cycle or efficiency-map CSV) is malformed."""


class MonotonicityError(FormatError):
    """Drive-cycle time column is not strictly increasing from zero."""


class NegativeSpeedError(FormatError):
    """Drive-cycle speed column contains a negative value."""


class MapFormatError(FormatError):
    """Motor efficiency-map CSV is malformed."""


class NumericalError(BevsimError):
    """A state value went non-finite or non-physical; the run is aborted."""


class PluginError(BevsimError):
    """Base class for external-model subprocess failures."""


class SpawnError(PluginError):
    """The plugin executable could not be started."""


class HandshakeError(PluginError):
    """The plugin did not complete the ready handshake."""


class VersionError(HandshakeError):
    """The plugin speaks an unsupported protocol version."""


class PluginTimeoutError(PluginError):
    """The plugin did not answer a request within the configured timeout."""


class ProtocolError(PluginError):
    """The plugin emitted a line that is not a valid protocol message."""


class InvariantError(PluginError):
    """A plugin output violates the invariants required of builtin models."""
