"""Seeded Monte Carlo sweep over methods and BS transmit power."""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import logging

import numpy as np

from .channel import CHANNEL_LINKS, draw_channel_set, draw_direct_ue1
from .config import dbm_to_watts
from .errors import NumericalError
from .irs import design_phase
from .metrics import link_metrics
from .scene import Link, build_geometry, draw_large_scale
from .txrx import MethodId, build_combiners, build_precoders, effective_channels

log = logging.getLogger(__name__)

UE_LABELS = ("1", "2", "sum")


@dataclass
class SweepResult:
    """Per (method, power, UE) statistics of the spectral efficiency.

    Arrays ``mean``, ``std`` and ``ci95`` have shape
    ``(len(methods), len(powers_dbm), 3)``; the last axis is UE1, UE2, sum.
    ``samples`` keeps the raw per-realization values ``(R, methods, powers, 2)``
    when the result comes from a run rather than from a file.
    """

    methods: tuple
    powers_dbm: tuple
    mean: np.ndarray
    std: np.ndarray
    ci95: np.ndarray
    realizations: int
    samples: np.ndarray = None

    @classmethod
    def from_samples(cls, methods, powers_dbm, samples):
        samples = np.asarray(samples, dtype=float)
        full = np.concatenate([samples, samples.sum(axis=-1, keepdims=True)], axis=-1)
        n = full.shape[0]
        mean = full.mean(axis=0)
        std = full.std(axis=0, ddof=1) if n > 1 else np.zeros_like(mean)
        ci95 = 1.96 * std / np.sqrt(n)
        return cls(tuple(methods), tuple(powers_dbm), mean, std, ci95, n, samples)

    def index(self, method, power_dbm):
        return self.methods.index(MethodId(method)), self.powers_dbm.index(float(power_dbm))

    def mean_se(self, method, power_dbm, ue="sum"):
        i, j = self.index(method, power_dbm)
        return float(self.mean[i, j, UE_LABELS.index(str(ue))])

    def series(self, method, ue="sum"):
        i = self.methods.index(MethodId(method))
        return np.asarray(self.powers_dbm), self.mean[i, :, UE_LABELS.index(str(ue))]

    def paired_difference(self, a, b, power_dbm, ue="sum"):
        """Per-realization SE of method ``a`` minus method ``b`` at one power."""
        if self.samples is None:
            raise ValueError("paired statistics need per-realization samples")
        ia, j = self.index(a, power_dbm)
        ib, _ = self.index(b, power_dbm)
        k = UE_LABELS.index(str(ue))
        xa = self.samples[:, ia, j, :]
        xb = self.samples[:, ib, j, :]
        if k == 2:
            return xa.sum(axis=-1) - xb.sum(axis=-1)
        return xa[:, k] - xb[:, k]

    def rows(self):
        """(method, power_dbm, ue, mean, std, ci95, n) sorted by method, power, UE."""
        order = sorted(range(len(self.methods)), key=lambda i: self.methods[i].value)
        for i in order:
            for j, p in enumerate(self.powers_dbm):
                for k, ue in enumerate(UE_LABELS):
                    yield (self.methods[i].value, p, ue, float(self.mean[i, j, k]),
                           float(self.std[i, j, k]), float(self.ci95[i, j, k]),
                           self.realizations)


def realization_rngs(seed, index):
    """Independent generators for realization ``index``: main channels and UE1 direct link."""
    return tuple(
        np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0, index, k)))
        for k in range(2)
    )


def frozen_large_scale(config, geom):
    rng = np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(1,)))
    links = CHANNEL_LINKS + (Link.BS_UE1,)
    return {link: draw_large_scale(geom, link, rng, config.fc_ghz) for link in links}


def simulate_realization(config, index, geom=None, frozen=None):
    """SE of UE1 and UE2 for every (method, power) in one channel realization.

    Returns an array of shape ``(len(methods), len(powers), 2)``. All methods
    and powers share the same channels.
    """
    geom = build_geometry(config) if geom is None else geom
    rng, rng_direct = realization_rngs(config.seed, index)
    channels = draw_channel_set(config, geom, rng, frozen)
    direct = None
    if MethodId.NO_IRS_BD in config.methods:
        direct = draw_direct_ue1(config, geom, rng_direct,
                                 None if frozen is None else frozen[Link.BS_UE1])
    phase = design_phase(channels.J, channels.G1)
    powers_w = dbm_to_watts(config.power_sweep_dbm)
    out = np.empty((len(config.methods), len(powers_w), 2))
    for i, method in enumerate(config.methods):
        h1, h2, h2_irs = effective_channels(method, channels, phase, direct)
        # precoder directions do not depend on power; build once at 1 W and rescale
        try:
            unit = build_precoders(method, channels, phase, config.Ns, 1.0, direct,
                                   config.rank_tol)
        except NumericalError as exc:
            raise type(exc)(f"{exc} [method={method.value}, realization={index}]") from exc
        for j, p in enumerate(powers_w):
            try:
                prec = unit.scaled(p)
                comb = build_combiners(channels, phase, prec, method, direct)
                m = link_metrics(h1, h2, h2_irs, prec, comb, config.noise_var1,
                                 config.noise_var2, config.se_mode, config.noise_model)
            except NumericalError as exc:
                raise type(exc)(
                    f"{exc} [method={method.value}, realization={index}, "
                    f"power={config.power_sweep_dbm[j]} dBm]"
                ) from exc
            out[i, j] = m.se1, m.se2
    return out


def _run_chunk(config, indices):
    geom = build_geometry(config)
    frozen = frozen_large_scale(config, geom) if config.freeze_large_scale else None
    return np.stack([simulate_realization(config, r, geom, frozen) for r in indices])


def run_sweep(config, workers=1) -> SweepResult:
    """Run every realization and aggregate in realization-index order.

    The result does not depend on ``workers``: realization ``r`` always draws
    from the stream derived from ``(seed, r)``.
    """
    n = config.realizations
    if workers <= 1 or n == 1:
        samples = _run_chunk(config, range(n))
    else:
        chunks = [c for c in np.array_split(np.arange(n), workers * 4) if len(c)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, [config] * len(chunks),
                                  [c.tolist() for c in chunks]))
        samples = np.concatenate(parts, axis=0)
    log.info("sweep finished: %d realizations, %d methods, %d power points",
             n, len(config.methods), len(config.power_sweep_dbm))
    return SweepResult.from_samples(config.methods, config.power_sweep_dbm, samples)
