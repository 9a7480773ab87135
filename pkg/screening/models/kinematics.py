"""Reference-problem kinematic carriers."""
from dataclasses import dataclass
from typing import Literal

import numpy as np

Sheet = Literal["physical", "second"]


@dataclass(frozen=True)
class KinematicPoint:
    """Energy with its momentum, e^{i theta} and Sommerfeld parameter.

    ``coulomb_shift`` is 2 eta sin(theta) = Z lambda / (E + lambda^2/8); it is
    kept separately so the recursion stays finite at k = 0.
    """

    energy: complex
    k: complex
    exp_i_theta: complex
    eta: complex
    coulomb_shift: complex
    sheet: Sheet
    lam: float

    @property
    def cos_theta(self) -> complex:
        z = self.exp_i_theta
        return (z + 1 / z) / 2

    @property
    def sin_theta(self) -> complex:
        z = self.exp_i_theta
        return (z - 1 / z) / 2j

    @property
    def is_free(self) -> bool:
        return self.coulomb_shift == 0


@dataclass(frozen=True)
class Table1Initials:
    """T_0 and R_1^+- of the free reference problem."""

    t0: complex
    r1_plus: complex
    r1_minus: complex


@dataclass(frozen=True)
class KinematicChain:
    """T_0, R_N^+- and J_{N-1,N} at one energy.

    ``log_p_plus``/``log_p_minus`` are log of h^+-_{N-1}/h^+-_0, the products
    of R_1..R_{N-1}; T_{N-1} = T_0 P^-/P^+ follows from them.
    """

    t0: complex
    r_plus: complex
    r_minus: complex
    log_p_plus: complex
    log_p_minus: complex
    j_corner: complex


@dataclass(frozen=True)
class MinimalSolution:
    """Minimal solution of the recursion rows n >= 1, normalized to m_0 = 1."""

    values: np.ndarray
    ratios: np.ndarray
    tail_ratio: complex
    depth: int
