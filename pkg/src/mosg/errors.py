"""Exception and warning types shared across the package."""


class MosgError(Exception):
    """Base class for all package errors."""


class ScenarioError(MosgError, ValueError):
    """Raised when a scenario file or override cannot be turned into a Scenario."""


class MissingKey(ScenarioError):
    def __init__(self, key: str):
        self.key = key
        super().__init__(f"missing required key: {key}")


class BadValue(ScenarioError):
    def __init__(self, key: str, reason: str):
        self.key = key
        self.reason = reason
        super().__init__(f"bad value for {key}: {reason}")


class UnknownKey(ScenarioError):
    def __init__(self, keys):
        self.keys = tuple(keys)
        super().__init__("unknown key(s): " + ", ".join(self.keys))


class ModeMismatch(ScenarioError):
    def __init__(self, mode: str, reason: str):
        self.mode = mode
        super().__init__(f"{mode}: {reason}")


class ZeroControlField(MosgError, ValueError):
    """The control Rabi frequency vanishes where it is needed."""


class StepTooLarge(MosgError, ValueError):
    """Fixed-step integrator guard tripped."""


class ControlFieldUnderflow(MosgError, FloatingPointError):
    """The Gaussian control profile underflows on the grid, so the potential diverges."""


class PacketOutsideGrid(MosgError, ValueError):
    pass


class GridError(MosgError, ValueError):
    """Grid does not satisfy the resolution or size invariants."""


class WraparoundError(MosgError, RuntimeError):
    """Field intensity reached the periodic boundary."""


class ZeroNorm(MosgError, ValueError):
    pass


class WrongMode(MosgError, ValueError):
    pass


class BadSweepKey(MosgError, KeyError):
    pass


class ValidityWarning(UserWarning):
    """A modelling approximation is being used outside its comfortable regime."""


class AccuracyWarning(UserWarning):
    """Step size is coarse relative to the potential."""
