"""Laguerre basis carriers."""
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class BasisSpec(BaseModel):
    """Laguerre basis phi_n(x) = a_n x^alpha e^{-x/2} L_n^nu(x), x = lambda r."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    ell: int = Field(..., ge=0)
    lam: float = Field(..., gt=0, alias="lambda")
    n_basis: int = Field(..., ge=2)

    @property
    def alpha(self) -> int:
        return self.ell + 1

    @property
    def nu(self) -> int:
        return 2 * self.ell + 1

    def with_size(self, n_basis: int) -> "BasisSpec":
        return BasisSpec(ell=self.ell, lam=self.lam, n_basis=n_basis)

    def with_scale(self, lam: float) -> "BasisSpec":
        return BasisSpec(ell=self.ell, lam=lam, n_basis=self.n_basis)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule from the overlap matrix: nodes are the zeros of L_N^nu."""

    nodes: np.ndarray
    vectors: np.ndarray

    @property
    def size(self) -> int:
        return self.nodes.size
