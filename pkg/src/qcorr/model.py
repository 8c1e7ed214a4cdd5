"""Physical parameters, spin operators and the two-qubit XY Hamiltonian.

Conventions: hbar = 1; basis {|00>, |01>, |10>, |11>}; |0> is the upper
(excited) single-qubit level, so the lowering operator sends |0> to |1>
and relaxation accumulates population in |11>.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

S_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
S_PLUS = S_MINUS.conj().T
S_Z = SIGMA_Z / 2.0


@dataclass(frozen=True)
class ModelParams:
    """Model parameters, all rates and couplings in units of omega.

    j is the isotropic qubit-qubit coupling, delta the anisotropy, omega the
    field strength (reference scale), gamma the relaxation rate and nbar the
    mean thermal excitation of the bath (0 at zero temperature).
    """

    j: float = 0.1
    delta: float = 0.5
    omega: float = 1.0
    gamma: float = 0.1
    nbar: float = 0.0

    def __post_init__(self):
        if not self.omega > 0.0:
            raise DomainError(f"omega must be positive, got {self.omega}")
        if self.gamma < 0.0:
            raise DomainError(f"gamma must be non-negative, got {self.gamma}")
        if self.nbar < 0.0:
            raise DomainError(f"nbar must be non-negative, got {self.nbar}")
        if max(abs(self.j), abs(self.delta)) > 0.5 * self.omega:
            warnings.warn(
                "coupling beyond the weak-interaction regime (|J| or |Delta|"
                " exceeds omega/2); equations stay exact but the equal-rate"
                " relaxation assumption degrades",
                stacklevel=2,
            )

    @property
    def big_omega(self) -> float:
        """Dressed frequency sqrt(delta^2 + omega^2), always recomputed."""
        return float(np.hypot(self.delta, self.omega))


def spin_lowering(qubit: int) -> np.ndarray:
    """Two-qubit lowering operator S- acting on qubit 1 or 2."""
    if qubit == 1:
        return np.kron(S_MINUS, IDENTITY_2)
    if qubit == 2:
        return np.kron(IDENTITY_2, S_MINUS)
    raise DomainError(f"qubit index must be 1 or 2, got {qubit}")


def spin_raising(qubit: int) -> np.ndarray:
    return spin_lowering(qubit).conj().T


def hamiltonian(params: ModelParams) -> np.ndarray:
    """XY Hamiltonian: J couples |01> and |10>, Delta couples |00> and |11>,
    and the field contributes omega on diag(1, 0, 0, -1).

    The spectrum is {+-J, +-Omega} with Omega = sqrt(delta^2 + omega^2).
    """
    j, d, w = params.j, params.delta, params.omega
    h = (
        j * (np.kron(S_PLUS, S_MINUS) + np.kron(S_MINUS, S_PLUS))
        + d * (np.kron(S_PLUS, S_PLUS) + np.kron(S_MINUS, S_MINUS))
        + w * (np.kron(S_Z, IDENTITY_2) + np.kron(IDENTITY_2, S_Z))
    )
    return h
