"""Discrete memoryless channel container shared by the receiver models."""

from dataclasses import dataclass, field

import numpy as np

ROW_SUM_TOL = 1e-12
NEG_ENTRY_TOL = -1e-15


class ConvergenceError(RuntimeError):
    """An iterative solve ran out of iterations before reaching tolerance.

    Carries the best iterate found so callers can inspect it.
    """

    def __init__(self, message, best=None, lower=None, upper=None):
        super().__init__(message)
        self.best = best
        self.lower = lower
        self.upper = upper


@dataclass(frozen=True, eq=False)
class DiscreteChannel:
    """Row-stochastic transition matrix with labeled input/output symbols.

    ``p[i, j]`` is the probability of output ``outputs[j]`` given input
    ``inputs[i]``. Outputs may include an erasure label; it is an ordinary
    output symbol, never merged or randomly resolved here.
    """

    inputs: tuple
    outputs: tuple
    p: np.ndarray = field(repr=False)

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.shape != (len(self.inputs), len(self.outputs)):
            raise ValueError(
                f"transition matrix shape {p.shape} does not match "
                f"{len(self.inputs)} inputs x {len(self.outputs)} outputs"
            )
        if np.any(p < NEG_ENTRY_TOL):
            raise ValueError("negative transition probability")
        rows = p.sum(axis=1)
        if np.any(np.abs(rows - 1.0) > ROW_SUM_TOL):
            worst = float(np.max(np.abs(rows - 1.0)))
            raise ValueError(f"rows must sum to 1 within {ROW_SUM_TOL}, worst off by {worst}")
        p = np.clip(p, 0.0, None)
        p.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))

    @property
    def num_inputs(self):
        return len(self.inputs)

    @property
    def num_outputs(self):
        return len(self.outputs)
