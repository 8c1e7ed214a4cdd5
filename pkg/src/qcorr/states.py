"""Construction, validation and transformation of two-qubit X states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NotPSD, NotXShaped, TraceNotOne
from .linalg import HERMITICITY_TOL, PSD_TOL, hermitian_eigensystem, require_hermitian

TRACE_TOL = 1e-10
X_SHAPE_TOL = 1e-9

# entries allowed to be nonzero in the X pattern
_X_PATTERN = {(0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)}


@dataclass(frozen=True)
class XState:
    """The six independent entries of an X-shaped density matrix.

    rho41 and rho32 are implied by Hermiticity. Construction validates unit
    trace, non-negative populations and the two 2x2 positivity conditions
    rho22*rho33 >= |rho23|^2 and rho11*rho44 >= |rho14|^2 (all to 1e-10).
    """

    rho11: float
    rho22: float
    rho33: float
    rho44: float
    rho14: complex
    rho23: complex

    def __post_init__(self):
        object.__setattr__(self, "rho11", float(self.rho11))
        object.__setattr__(self, "rho22", float(self.rho22))
        object.__setattr__(self, "rho33", float(self.rho33))
        object.__setattr__(self, "rho44", float(self.rho44))
        object.__setattr__(self, "rho14", complex(self.rho14))
        object.__setattr__(self, "rho23", complex(self.rho23))
        trace = self.rho11 + self.rho22 + self.rho33 + self.rho44
        if abs(trace - 1.0) > TRACE_TOL:
            raise TraceNotOne(f"trace = {trace!r}, |trace - 1| = {abs(trace - 1.0):.3e}")
        for name in ("rho11", "rho22", "rho33", "rho44"):
            val = getattr(self, name)
            if val < -PSD_TOL:
                raise NotPSD(f"population {name} = {val:.3e} below -{PSD_TOL:.1e}")
        inner = self.rho22 * self.rho33 - abs(self.rho23) ** 2
        if inner < -PSD_TOL:
            raise NotPSD(f"rho22*rho33 - |rho23|^2 = {inner:.3e} below -{PSD_TOL:.1e}")
        outer = self.rho11 * self.rho44 - abs(self.rho14) ** 2
        if outer < -PSD_TOL:
            raise NotPSD(f"rho11*rho44 - |rho14|^2 = {outer:.3e} below -{PSD_TOL:.1e}")

    def to_matrix(self) -> np.ndarray:
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0], m[1, 1], m[2, 2], m[3, 3] = self.rho11, self.rho22, self.rho33, self.rho44
        m[0, 3], m[3, 0] = self.rho14, np.conj(self.rho14)
        m[1, 2], m[2, 1] = self.rho23, np.conj(self.rho23)
        return m

    @staticmethod
    def from_matrix(rho, tol: float = X_SHAPE_TOL) -> "XState":
        """Extract the X entries of a valid density matrix; NotXShaped otherwise."""
        rho = np.asarray(rho, dtype=complex)
        if not is_x_shaped(rho, tol):
            raise NotXShaped(f"off-pattern entries exceed {tol:.1e}")
        return XState(
            rho[0, 0].real, rho[1, 1].real, rho[2, 2].real, rho[3, 3].real,
            rho[0, 3], rho[1, 2],
        )


@dataclass(frozen=True)
class DickeState:
    """X state expressed in the collective basis {|e>, |g>, |s>, |a>}.

    |e> = |00>, |g> = |11>, |s>/|a> are the symmetric/antisymmetric
    one-excitation states; the matrix is block diagonal with blocks
    {e, g} and {s, a}.
    """

    ee: float
    gg: float
    ss: float
    aa: float
    eg: complex
    sa: complex

    def __post_init__(self):
        object.__setattr__(self, "ee", float(self.ee))
        object.__setattr__(self, "gg", float(self.gg))
        object.__setattr__(self, "ss", float(self.ss))
        object.__setattr__(self, "aa", float(self.aa))
        object.__setattr__(self, "eg", complex(self.eg))
        object.__setattr__(self, "sa", complex(self.sa))
        trace = self.ee + self.gg + self.ss + self.aa
        if abs(trace - 1.0) > TRACE_TOL:
            raise TraceNotOne(f"trace = {trace!r}, |trace - 1| = {abs(trace - 1.0):.3e}")


def validate(rho, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity of a 4x4 density matrix.

    Returns the matrix as a complex ndarray on success; raises NotHermitian,
    TraceNotOne or NotPSD naming the violated bound and its magnitude.
    """
    rho = require_hermitian(rho, tol)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > TRACE_TOL:
        raise TraceNotOne(f"trace = {trace!r}, |trace - 1| = {abs(trace - 1.0):.3e}")
    lam_min = hermitian_eigensystem(rho).eigenvalues[0]
    if lam_min < -PSD_TOL:
        raise NotPSD(f"minimum eigenvalue {lam_min:.3e} below -{PSD_TOL:.1e}")
    return rho


def is_x_shaped(rho, tol: float = X_SHAPE_TOL) -> bool:
    """True iff every entry outside the X pattern has magnitude <= tol."""
    rho = np.asarray(rho, dtype=complex)
    off = max(
        abs(rho[i, j]) for i in range(4) for j in range(4) if (i, j) not in _X_PATTERN
    )
    return off <= tol


def to_dicke(x: XState) -> DickeState:
    """Rotate the one-excitation block into the symmetric/antisymmetric basis."""
    rho32 = np.conj(x.rho23)
    half_sum = 0.5 * (x.rho22 + x.rho33)
    return DickeState(
        ee=x.rho11,
        gg=x.rho44,
        eg=x.rho14,
        ss=half_sum + rho32.real,
        aa=half_sum - rho32.real,
        sa=0.5 * (x.rho22 - x.rho33) + 1j * rho32.imag,
    )


def from_dicke(d: DickeState) -> XState:
    half_sum = 0.5 * (d.ss + d.aa)
    rho32 = (d.ss - d.aa) / 2.0 + 1j * d.sa.imag
    return XState(
        rho11=d.ee,
        rho22=half_sum + d.sa.real,
        rho33=half_sum - d.sa.real,
        rho44=d.gg,
        rho14=d.eg,
        rho23=np.conj(rho32),
    )


def reduced_a(x: XState) -> np.ndarray:
    """Reduced state of qubit A; diagonal for every X state."""
    return np.diag([x.rho11 + x.rho22, x.rho33 + x.rho44]).astype(complex)


def reduced_b(x: XState) -> np.ndarray:
    """Reduced state of qubit B; diagonal for every X state."""
    return np.diag([x.rho11 + x.rho33, x.rho22 + x.rho44]).astype(complex)


def trace_out_b(rho) -> np.ndarray:
    """Reduced 2x2 state of qubit A for an arbitrary two-qubit matrix."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    return np.trace(r, axis1=1, axis2=3)


def trace_out_a(rho) -> np.ndarray:
    """Reduced 2x2 state of qubit B for an arbitrary two-qubit matrix."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    return np.trace(r, axis1=0, axis2=2)


def purity(rho) -> float:
    """tr(rho^2); 1/4 for the maximally mixed state, 1 for pure states."""
    if isinstance(rho, XState):
        rho = rho.to_matrix()
    rho = np.asarray(rho, dtype=complex)
    return float(np.real(np.trace(rho @ rho)))


def make_mixture(w: float) -> XState:
    """Mixture w |01><01| + (1-w) |phi+><phi+| with |phi+> = (|00>+|11>)/sqrt(2)."""
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"mixture weight must lie in [0, 1], got {w}")
    q = (1.0 - w) / 2.0
    return XState(rho11=q, rho22=w, rho33=0.0, rho44=q, rho14=q, rho23=0.0)


def make_werner(p: float) -> XState:
    """Werner state: p |psi-><psi-| + (1-p)/4 identity, p in [-1/3, 1]."""
    if not -1.0 / 3.0 <= p <= 1.0:
        raise DomainError(f"Werner parameter must lie in [-1/3, 1], got {p}")
    return XState(
        rho11=(1.0 - p) / 4.0,
        rho22=(1.0 + p) / 4.0,
        rho33=(1.0 + p) / 4.0,
        rho44=(1.0 - p) / 4.0,
        rho14=0.0,
        rho23=-p / 2.0,
    )


def dumps_density_matrix(rho) -> str:
    """Serialize a 4x4 matrix as 4 lines of 4 're+imi' entries, 17 significant digits."""
    if isinstance(rho, XState):
        rho = rho.to_matrix()
    rho = np.asarray(rho, dtype=complex)
    lines = []
    for row in rho:
        lines.append(" ".join(f"{z.real:.17g}{z.imag:+.17g}i" for z in row))
    return "\n".join(lines) + "\n"


def loads_density_matrix(text: str) -> np.ndarray:
    """Parse the textual format produced by dumps_density_matrix."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 4:
        raise ValueError(f"expected 4 matrix rows, got {len(lines)}")
    out = np.zeros((4, 4), dtype=complex)
    for i, ln in enumerate(lines):
        tokens = ln.split()
        if len(tokens) != 4:
            raise ValueError(f"row {i + 1}: expected 4 entries, got {len(tokens)}")
        for j, tok in enumerate(tokens):
            if not tok.endswith("i"):
                raise ValueError(f"row {i + 1} entry {j + 1}: missing trailing 'i'")
            out[i, j] = complex(tok[:-1] + "j")
    return out
