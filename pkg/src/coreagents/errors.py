"""Exception types shared across the package."""


class CoreAgentsError(Exception):
    """Base class for all package-specific errors."""


# --- SBI / core simulator ---

class InvalidApiRoot(CoreAgentsError):
    """apiRoot scheme is neither http nor https."""


class ValidationError(CoreAgentsError):
    """A domain object violates its invariants (maps to HTTP 400 on the SBI)."""


class UnknownNf(CoreAgentsError):
    """NF type is not part of the simulated deployment."""


class BackendFailure(CoreAgentsError):
    """The NF runtime backend reported a failure."""


# --- MCP ---

class VersionMismatch(CoreAgentsError):
    """Client requested an unsupported MCP protocol version."""


class UnknownTool(CoreAgentsError):
    """tools/call named a tool the server does not expose."""


class JsonRpcRemoteError(CoreAgentsError):
    """JSON-RPC error object returned by a remote MCP or A2A endpoint."""

    def __init__(self, code: int, message: str):
        super().__init__(f"JSON-RPC error {code}: {message}")
        self.code = code
        self.message = message


# --- A2A ---

class Unreachable(CoreAgentsError):
    """Peer endpoint could not be contacted."""


class MalformedCard(CoreAgentsError):
    """Agent card failed validation."""


class TaskFailed(CoreAgentsError):
    """Remote agent returned a failed task."""

    def __init__(self, diagnostic: str):
        super().__init__(diagnostic)
        self.diagnostic = diagnostic


# --- agent runtime ---

class EmptyIntent(CoreAgentsError):
    """Intent text was empty."""


class UnrecognizedIntent(CoreAgentsError):
    """No grammar rule matched the intent text."""


class NoMatchingTool(CoreAgentsError):
    """No listed tool matches the delegated step goal."""


class ToolCallFailed(CoreAgentsError):
    """Tool returned isError=true; carries the diagnostic result string."""

    def __init__(self, diagnostic: str):
        super().__init__(diagnostic)
        self.diagnostic = diagnostic


class DelegationFailure(CoreAgentsError):
    """A sub-agent task failed or the sub-agent was unreachable."""


class BackendUnavailable(CoreAgentsError):
    """External reasoning endpoint is not reachable."""


class MalformedModelReply(CoreAgentsError):
    """External reasoning endpoint returned an unparseable reply."""


# --- tracing / latency ---

class MissingBoundary(CoreAgentsError):
    """A trace lacks an event pair required for a latency component."""

    def __init__(self, component: str):
        super().__init__(f"missing boundary events for component: {component}")
        self.component = component


# --- scenario / stack ---

class PortConflict(CoreAgentsError):
    """A configured listen port is already in use."""

    def __init__(self, port: int, what: str = ""):
        detail = f" ({what})" if what else ""
        super().__init__(f"port {port} already in use{detail}")
        self.port = port


class StartupTimeout(CoreAgentsError):
    """Stack components did not become reachable in time."""


class PreconditionFailure(CoreAgentsError):
    """A scenario precondition references an unknown NF or could not be applied."""
