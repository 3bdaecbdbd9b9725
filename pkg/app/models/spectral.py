"""Spectral models - Fourier symbols and their eigensystems."""

from pydantic import BaseModel, ConfigDict, Field

from app.models.coin import CoinMatrix
from app.models.numeric import ComplexValue
from app.models.walk import Spinor


class SymbolMatrix(BaseModel):
    """One-step operator R(k) U in momentum space."""

    model_config = ConfigDict(frozen=True)

    k: float = Field(..., ge=0.0, description="Wavenumber reduced to [0, 2 pi)")
    matrix: CoinMatrix


class EigenSystem(BaseModel):
    """Eigenpairs of the two-period symbol and the initial-state overlaps."""

    model_config = ConfigDict(frozen=True)

    lambda0: ComplexValue = Field(..., description="Eigenvalue with non-negative imaginary part")
    lambda1: ComplexValue = Field(..., description="Eigenvalue with non-positive imaginary part")
    v0: Spinor
    v1: Spinor
    overlaps: tuple[float, float] = Field(..., description="|<v_j|psi_0>|^2 for j = 0, 1")
