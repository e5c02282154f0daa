class Infeasible(Exception):
    """No interconnection set can make the composite system structurally controllable."""


class InternalConsistencyError(RuntimeError):
    """A step hit a state its correctness argument rules out."""


class InstanceError(ValueError):
    """Malformed or out-of-range instance/report document."""
