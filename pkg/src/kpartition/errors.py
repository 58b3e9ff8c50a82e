"""Exception types shared across the package."""

from __future__ import annotations

from typing import Any


class InputError(ValueError):
    """Malformed or out-of-contract user input."""


class GenerationError(InputError):
    """A random generator gave up after too many rejections."""


class ContractError(Exception):
    """A function was called with arguments violating its precondition."""


class InvariantError(RuntimeError):
    """An internal invariant failed. Carries a dump of the offending state."""

    def __init__(self, message: str, state: Any = None):
        super().__init__(message)
        self.state = state

    def __str__(self) -> str:
        base = super().__str__()
        if self.state is None:
            return base
        return f"{base}\nstate: {self.state!r}"


class NotKConnected(Exception):
    """Raised when the engine exhausts its moves; carries the separating cut."""

    def __init__(self, witness):
        super().__init__(f"graph is not k-connected: cut {sorted(witness.cut)}")
        self.witness = witness


class ProgressStall(Exception):
    """Raised when an augmentation exceeds its step budget."""

    def __init__(self, steps: int, trace_tail: list):
        super().__init__(f"no augmentation after {steps} moves")
        self.steps = steps
        self.trace_tail = trace_tail
