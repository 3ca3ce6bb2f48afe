"""IRS passive beamforming: phase design and cascaded channels."""
from dataclasses import dataclass
import warnings

import numpy as np

from .errors import DimensionError
from .matgebra import svd

DEGENERACY_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class PhaseProfile:
    omega: np.ndarray  # radians, length N

    @property
    def coefficients(self):
        """Diagonal of the reflection matrix, exp(j*omega)."""
        return np.exp(1j * self.omega)

    @property
    def reflection(self):
        return np.diag(self.coefficients)

    @classmethod
    def identity(cls, n):
        return cls(np.zeros(n))


def _fix_global_phase(vec):
    # Rotate so the first non-negligible entry is real positive.
    idx = int(np.argmax(np.abs(vec) > 1e-12 * np.abs(vec).max()))
    return vec * np.exp(-1j * np.angle(vec[idx]))


def _dominant(sigma, name):
    if len(sigma) > 1 and sigma[0] - sigma[1] <= DEGENERACY_RTOL * sigma[0]:
        warnings.warn(
            f"dominant singular value of {name} is degenerate; using the first vector",
            RuntimeWarning,
            stacklevel=3,
        )


def align_phases(u, v):
    """Phases that co-phase ``u`` and ``v`` element-wise: -angle(u * conj(v))."""
    return -np.angle(np.asarray(u) * np.conj(np.asarray(v)))


def design_phase(J, G1) -> PhaseProfile:
    """Align the IRS with the dominant BS->IRS and IRS->UE1 modes.

    ``u`` is the dominant left singular vector of ``J`` and ``v`` the dominant
    right singular vector of ``G1``; with these phases ``v^H Omega u`` becomes
    the real sum ``sum(|u_n| |v_n|)``.
    """
    J = np.asarray(J)
    G1 = np.asarray(G1)
    if J.shape[0] != G1.shape[1]:
        raise DimensionError(f"J is {J.shape} but G1 is {G1.shape}")
    fj, fg = svd(J), svd(G1)
    _dominant(fj.s, "J")
    _dominant(fg.s, "G1")
    u = _fix_global_phase(fj.u[:, 0])
    v = _fix_global_phase(fg.v[:, 0])
    return PhaseProfile(align_phases(u, v))


def cascade(G, phase: PhaseProfile, J):
    """Cascaded channel ``G @ diag(exp(j omega)) @ J``."""
    G = np.asarray(G)
    J = np.asarray(J)
    n = len(phase.omega)
    if G.shape[1] != n or J.shape[0] != n:
        raise DimensionError(
            f"cannot cascade G {G.shape}, IRS with {n} elements and J {J.shape}"
        )
    return (G * phase.coefficients) @ J
