"""Post-combining SINR and spectral efficiency of the two UEs."""
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError

SE_MODES = ("det", "scalar")
NOISE_MODELS = ("combined", "white")


def _herm(a):
    return a.conj().T


@dataclass(frozen=True, eq=False)
class SinrTerms:
    """Ns x Ns covariances after combining and the resulting SINR."""

    signal: np.ndarray
    interference: np.ndarray
    noise: np.ndarray

    @property
    def covariance(self):
        """Interference-plus-noise covariance R."""
        return self.noise + self.interference

    @property
    def matrix(self):
        """The matrix under the trace, ``S @ inv(R)``."""
        return self.signal @ np.linalg.inv(self.covariance)

    @property
    def gamma(self):
        return float(np.real(np.trace(self.matrix)))

    @property
    def signal_power(self):
        return float(np.real(np.trace(self.signal)))

    @property
    def interference_power(self):
        return float(np.real(np.trace(self.interference)))

    @property
    def noise_power(self):
        return float(np.real(np.trace(self.noise)))


def _noise_cov(W, noise_var, noise_model):
    if noise_model == "combined":
        return noise_var * (_herm(W) @ W)
    if noise_model == "white":
        return noise_var * np.eye(W.shape[1])
    raise ValueError(f"unknown noise model {noise_model!r}")


def _cov(W, H, F):
    x = _herm(W) @ H @ F
    return x @ _herm(x)


def sinr_ue1(h1, F1, F2, W1, noise_var, noise_model="combined") -> SinrTerms:
    """UE1 receives only through its intended channel ``h1``; ``F2`` is interference."""
    return SinrTerms(_cov(W1, h1, F1), _cov(W1, h1, F2), _noise_cov(W1, noise_var, noise_model))


def sinr_ue2(h2, h2_irs, F1, F2, W2, noise_var, noise_model="combined") -> SinrTerms:
    """UE2 sums the direct and reflected signal covariances; interference uses the
    composite channel ``h2 + h2_irs``. ``h2_irs=None`` means no reflected path."""
    signal = _cov(W2, h2, F2)
    composite = h2
    if h2_irs is not None:
        signal = signal + _cov(W2, h2_irs, F2)
        composite = h2 + h2_irs
    return SinrTerms(signal, _cov(W2, composite, F1), _noise_cov(W2, noise_var, noise_model))


def spectral_efficiency(sinr_matrix, mode="det"):
    """Bits/s/Hz from the SINR matrix.

    ``det``: log2 det(I + S R^-1). ``scalar``: log2(1 + tr(S R^-1)). The two agree
    when the matrix has rank one.
    """
    m = np.atleast_2d(np.asarray(sinr_matrix))
    if mode == "det":
        sign, logdet = np.linalg.slogdet(np.eye(m.shape[0]) + m)
        if not np.isfinite(logdet) or np.real(sign) <= 0:
            raise NumericalError("I + SINR matrix is not positive definite")
        return max(float(logdet / np.log(2)), 0.0)
    if mode == "scalar":
        t = float(np.real(np.trace(m)))
        if t <= -1:
            raise NumericalError(f"SINR trace {t} is below -1")
        return max(float(np.log2(1 + t)), 0.0)
    raise ValueError(f"unknown SE mode {mode!r}")


@dataclass(frozen=True)
class LinkMetrics:
    gamma1: float
    gamma2: float
    se1: float
    se2: float
    signal_power: tuple
    interference_power: tuple
    noise_power: tuple

    @property
    def se_sum(self):
        return sum_se(self)


def sum_se(m):
    return m.se1 + m.se2


def link_metrics(h1, h2, h2_irs, precoders, combiners, noise_var1, noise_var2,
                 se_mode="det", noise_model="combined") -> LinkMetrics:
    t1 = sinr_ue1(h1, precoders.F1, precoders.F2, combiners.W1, noise_var1, noise_model)
    t2 = sinr_ue2(h2, h2_irs, precoders.F1, precoders.F2, combiners.W2, noise_var2, noise_model)
    return LinkMetrics(
        gamma1=t1.gamma,
        gamma2=t2.gamma,
        se1=spectral_efficiency(t1.matrix, se_mode),
        se2=spectral_efficiency(t2.matrix, se_mode),
        signal_power=(t1.signal_power, t2.signal_power),
        interference_power=(t1.interference_power, t2.interference_power),
        noise_power=(t1.noise_power, t2.noise_power),
    )
