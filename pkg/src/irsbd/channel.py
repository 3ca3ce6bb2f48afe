"""Geometric Rician MIMO channels between ULA/URA nodes.

Array convention: every array lies in the global y-z plane with broadside
along x. ULAs are horizontal (elements along y) and ignore elevation. URAs
have rows stacked along z and columns along y; the steering vector is the
row-major vectorization of the (row, column) phase grid.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .scene import Link, draw_large_scale

SPACING_WAVELENGTHS = 0.5
NLOS_ELEVATION_LIMIT = np.pi / 4


@dataclass(frozen=True)
class ArraySpec:
    kind: str  # "ula" or "ura"
    rows: int = 1
    cols: int = 1
    spacing: float = SPACING_WAVELENGTHS

    def __post_init__(self):
        if self.kind not in ("ula", "ura"):
            raise ValueError(f"unknown array kind {self.kind!r}")
        if self.rows < 1 or self.cols < 1:
            raise ValueError("array dimensions must be >= 1")
        if self.kind == "ula" and self.rows != 1:
            raise ValueError("a ULA has a single row")

    @classmethod
    def ula(cls, elements):
        return cls("ula", 1, int(elements))

    @classmethod
    def ura(cls, elements):
        """Most nearly square rows x cols factorization with rows <= cols."""
        elements = int(elements)
        rows = max(d for d in range(1, math.isqrt(elements) + 1) if elements % d == 0)
        return cls("ura", rows, elements // rows)

    @property
    def elements(self):
        return self.rows * self.cols


def steering_vector(array: ArraySpec, azimuth, elevation=0.0):
    """Unit-modulus array response.

    Scalar angles give a vector of length ``array.elements``; 1-D angle arrays
    give a matrix with one column per angle.
    """
    az = np.asarray(azimuth, dtype=float)
    el = np.broadcast_to(np.asarray(elevation, dtype=float), az.shape)
    k = 2 * np.pi * array.spacing
    col = np.arange(array.cols)
    if array.kind == "ula":
        phase = k * np.multiply.outer(col, np.sin(az))
    else:
        row = np.arange(array.rows)
        vert = np.multiply.outer(row, np.sin(el))                  # rows x ...
        horiz = np.multiply.outer(col, np.cos(el) * np.sin(az))    # cols x ...
        phase = k * (vert[:, None] + horiz[None, :])
        phase = phase.reshape((array.elements,) + az.shape)
    return np.exp(1j * phase)


def bearing_angles(vec):
    """(azimuth, elevation) of a direction vector under the array convention."""
    vec = np.asarray(vec, dtype=float)
    d2d = math.hypot(vec[0], vec[1])
    az = math.asin(np.clip(vec[1] / d2d, -1.0, 1.0)) if d2d > 0 else 0.0
    el = math.atan2(vec[2], d2d)
    return az, el


def synthesize_channel(tx: ArraySpec, rx: ArraySpec, ls, los_angles, ray_count, rng):
    """One realization of the Rician channel ``rx.elements x tx.elements``.

    ``los_angles`` is ``(tx_az, tx_el, rx_az, rx_el)``. Random draws, in order:
    LOS phase; NLOS rx azimuths, rx elevations, tx azimuths, tx elevations
    (``ray_count`` each); ``ray_count`` complex gains.
    """
    if ray_count < 1:
        raise ValueError("ray_count must be >= 1")
    S = int(ray_count)
    k_lin = ls.k_factor_linear
    amp = np.sqrt(ls.gain_linear)

    los_phase = rng.uniform(0.0, 2 * np.pi)
    rx_az = rng.uniform(-np.pi / 2, np.pi / 2, S)
    rx_el = rng.uniform(-NLOS_ELEVATION_LIMIT, NLOS_ELEVATION_LIMIT, S)
    tx_az = rng.uniform(-np.pi / 2, np.pi / 2, S)
    tx_el = rng.uniform(-NLOS_ELEVATION_LIMIT, NLOS_ELEVATION_LIMIT, S)
    gains = amp * (rng.standard_normal(S) + 1j * rng.standard_normal(S)) / np.sqrt(2)

    if np.isinf(k_lin):
        w_los, w_nlos = 1.0, 0.0
    else:
        w_los, w_nlos = np.sqrt(k_lin / (k_lin + 1)), np.sqrt(1 / (k_lin + 1))

    t_az, t_el, r_az, r_el = los_angles
    a_r = steering_vector(rx, r_az, r_el)
    a_t = steering_vector(tx, t_az, t_el)
    los = amp * np.exp(1j * los_phase) * np.outer(a_r, a_t)

    A_r = steering_vector(rx, rx_az, rx_el if rx.kind == "ura" else 0.0)
    A_t = steering_vector(tx, tx_az, tx_el if tx.kind == "ura" else 0.0)
    nlos = (A_r * gains) @ A_t.T / np.sqrt(S)
    return w_los * los + w_nlos * nlos


@dataclass(frozen=True, eq=False)
class ChannelSet:
    """J: BS->IRS (N x M), H2: BS->UE2 (P x M), G1: IRS->UE1 (Q x N), G2: IRS->UE2 (P x N)."""

    J: np.ndarray
    H2: np.ndarray
    G1: np.ndarray
    G2: np.ndarray
    large_scale: dict = field(default_factory=dict, compare=False)


def node_arrays(config):
    return {
        "BS": ArraySpec.ula(config.M),
        "IRS": ArraySpec.ura(config.N),
        "UE1": ArraySpec.ula(config.Q),
        "UE2": ArraySpec.ula(config.P),
    }


def link_los_angles(geom, link):
    tx, rx = Link(link).endpoints
    t_az, t_el = bearing_angles(geom.vector(tx, rx))
    r_az, r_el = bearing_angles(geom.vector(rx, tx))
    return t_az, t_el, r_az, r_el


def draw_link(config, geom, link, rng, ls=None):
    """Draw one link's matrix; large-scale terms are drawn first unless ``ls`` is given."""
    link = Link(link)
    if ls is None:
        ls = draw_large_scale(geom, link, rng, config.fc_ghz)
    arrays = node_arrays(config)
    tx, rx = link.endpoints
    H = synthesize_channel(arrays[tx], arrays[rx], ls, link_los_angles(geom, link),
                           config.ray_count, rng)
    return H, ls


CHANNEL_LINKS = (Link.BS_IRS, Link.BS_UE2, Link.IRS_UE1, Link.IRS_UE2)


def draw_channel_set(config, geom, rng, large_scale=None) -> ChannelSet:
    """Draw J, H2, G1, G2 in that order.

    For each link the large-scale terms are drawn immediately before its small
    scale terms. Passing ``large_scale`` (a dict keyed by :class:`Link`) skips
    the large-scale draws and uses the given values.
    """
    mats, used = [], {}
    for link in CHANNEL_LINKS:
        ls = None if large_scale is None else large_scale[link]
        H, used[link] = draw_link(config, geom, link, rng, ls)
        mats.append(H)
    return ChannelSet(*mats, large_scale=used)


def draw_direct_ue1(config, geom, rng, ls=None):
    """Hypothetical BS->UE1 direct channel (Q x M) with the same statistics as H2."""
    H, _ = draw_link(config, geom, Link.BS_UE1, rng, ls)
    return H
