"""Dense complex linear algebra for the small Hermitian matrices used here.

All operations target exact sizes (2x2, 3x3, 4x4). The eigensolver is a
cyclic complex Jacobi iteration: at these sizes it is robust, needs no
library beyond numpy, and its sweep budget gives a hard failure mode
instead of silent inaccuracy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, NotHermitian, NotPSD

HERMITICITY_TOL = 1e-10
PSD_TOL = 1e-10

_JACOBI_SWEEP_BUDGET = 100
_JACOBI_OFF_TOL = 1e-14  # relative to the Frobenius norm of the input


@dataclass(frozen=True)
class HermitianEigensystem:
    """Eigenvalues in ascending order; eigenvectors as matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def require_hermitian(mat, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Return ``mat`` as a complex ndarray, raising NotHermitian if it is not."""
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    deviation = float(np.abs(mat - mat.conj().T).max())
    if deviation > tol:
        raise NotHermitian(f"max |M - M^dag| entry = {deviation:.3e} exceeds {tol:.1e}")
    return mat


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eigensystem(mat, tol: float = HERMITICITY_TOL) -> HermitianEigensystem:
    """Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Parameters
    ----------
    mat : array_like
        Hermitian matrix of size 2, 3 or 4.
    tol : float
        Hermiticity tolerance on max |M - M^dag|.

    Returns
    -------
    HermitianEigensystem
        Ascending eigenvalues and orthonormal eigenvector columns, so that
        V diag(w) V^dag reconstructs the input.
    """
    a = require_hermitian(mat, tol).copy()
    n = a.shape[0]
    if n not in (2, 3, 4):
        raise ValueError(f"solver is specialized to sizes 2..4, got {n}")
    v = np.eye(n, dtype=complex)
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return HermitianEigensystem(np.zeros(n), v)

    converged = False
    for _ in range(_JACOBI_SWEEP_BUDGET):
        if _offdiag_norm(a) <= _JACOBI_OFF_TOL * scale:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                zeta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if zeta == 0.0:
                    t = 1.0
                else:
                    # smaller-magnitude root of t^2 - 2 zeta t - 1 = 0
                    t = -np.sign(zeta) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                g = np.eye(n, dtype=complex)
                g[p, p] = c
                g[q, q] = c
                g[p, q] = -s * phase
                g[q, p] = s * np.conj(phase)
                a = g.conj().T @ a @ g
                v = v @ g
    if not converged and _offdiag_norm(a) > _JACOBI_OFF_TOL * scale:
        raise ConvergenceFailure(
            f"Jacobi sweep budget of {_JACOBI_SWEEP_BUDGET} exhausted "
            f"(off-diagonal norm {_offdiag_norm(a):.3e})"
        )

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return HermitianEigensystem(w[order], np.ascontiguousarray(v[:, order]))


def psd_sqrt(mat, tol: float = PSD_TOL) -> np.ndarray:
    """Hermitian square root of a PSD matrix.

    Eigenvalues in [-tol, 0) are treated as integrator round-off and clamped
    to zero; anything below -tol raises NotPSD.
    """
    es = hermitian_eigensystem(mat)
    if es.eigenvalues[0] < -tol:
        raise NotPSD(f"minimum eigenvalue {es.eigenvalues[0]:.3e} is below -{tol:.1e}")
    w = np.sqrt(np.clip(es.eigenvalues, 0.0, None))
    root = (es.eigenvectors * w) @ es.eigenvectors.conj().T
    return (root + root.conj().T) / 2.0


def trace_norm(mat) -> float:
    """||M||_1 of a Hermitian matrix, i.e. the sum of absolute eigenvalues."""
    es = hermitian_eigensystem(mat)
    return float(np.abs(es.eigenvalues).sum())


def partial_transpose_b(rho) -> np.ndarray:
    """Partial transpose of a two-qubit matrix with respect to the second qubit.

    Entry (i ox l, j ox k) of the output equals entry (i ox k, j ox l) of the
    input; the operation is an involution and preserves trace and Hermiticity.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4).copy()


def partial_transpose_a(rho) -> np.ndarray:
    """Partial transpose with respect to the first qubit (same spectrum as B)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    return rho.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4).copy()
