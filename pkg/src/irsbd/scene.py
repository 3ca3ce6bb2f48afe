"""Node placement and large-scale fading (UMa pathloss, shadowing, Rician K)."""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigError

SHADOW_STD_DB = 4.0
K_MEAN_DB = 9.0
K_STD_DB = 3.5


class Link(str, Enum):
    """Propagation links, named transmitter-to-receiver."""

    BS_IRS = "BS-IRS"      # J
    BS_UE2 = "BS-UE2"      # H2
    IRS_UE1 = "IRS-UE1"    # G1
    IRS_UE2 = "IRS-UE2"    # G2
    BS_UE1 = "BS-UE1"      # direct UE1 channel, only for the no-IRS benchmark

    @property
    def endpoints(self):
        tx, rx = self.value.split("-")
        return tx, rx


@dataclass(frozen=True)
class NodeGeometry:
    """3-D positions in meters keyed by node name (BS, IRS, UE1, UE2)."""

    positions: dict

    def __getitem__(self, node):
        return self.positions[node]

    def vector(self, src, dst):
        return np.asarray(self.positions[dst], float) - np.asarray(self.positions[src], float)

    def distance_3d(self, a, b):
        return float(np.linalg.norm(self.vector(a, b)))

    def distance_2d(self, a, b):
        return float(np.linalg.norm(self.vector(a, b)[:2]))


@dataclass(frozen=True)
class LinkLargeScale:
    pathloss_db: float
    shadow_db: float
    k_factor_db: float

    @property
    def k_factor_linear(self):
        return 10.0 ** (self.k_factor_db / 10.0)

    @property
    def gain_linear(self):
        """Power gain including pathloss and shadowing."""
        return 10.0 ** (-(self.pathloss_db + self.shadow_db) / 10.0)


def _place(d_bs, d_irs, d_bs_irs, name):
    # Circle intersection with BS at the origin and IRS at (d_bs_irs, 0).
    tol = 1e-9 * max(d_bs, d_irs, d_bs_irs, 1.0)
    if d_bs + d_irs < d_bs_irs - tol or d_bs + d_bs_irs < d_irs - tol or d_irs + d_bs_irs < d_bs - tol:
        raise ConfigError(
            f"{name} distances violate the triangle inequality "
            f"(BS-{name}={d_bs}, IRS-{name}={d_irs}, BS-IRS={d_bs_irs})"
        )
    x = (d_bs**2 + d_bs_irs**2 - d_irs**2) / (2 * d_bs_irs)
    y = np.sqrt(max(d_bs**2 - x**2, 0.0))
    return x, y


def build_geometry(config) -> NodeGeometry:
    """Fix node coordinates from the horizontal distance table and heights.

    The BS sits at the horizontal origin, the IRS on the +x axis and each UE at
    the circle intersection with positive y.
    """
    if config.d2d_bs_irs <= 0:
        raise ConfigError("BS-IRS distance must be positive", key="d2d_bs_irs")
    ue1 = _place(config.d2d_bs_ue1, config.d2d_irs_ue1, config.d2d_bs_irs, "UE1")
    ue2 = _place(config.d2d_bs_ue2, config.d2d_irs_ue2, config.d2d_bs_irs, "UE2")
    return NodeGeometry(
        {
            "BS": np.array([0.0, 0.0, config.h_bs]),
            "IRS": np.array([config.d2d_bs_irs, 0.0, config.h_irs]),
            "UE1": np.array([ue1[0], ue1[1], config.h_ue]),
            "UE2": np.array([ue2[0], ue2[1], config.h_ue]),
        }
    )


def pathloss_db(d3d, fc_ghz):
    """UMa LOS pathloss in dB with ``fc_ghz`` in GHz."""
    d3d = np.asarray(d3d, dtype=float)
    fc_ghz = np.asarray(fc_ghz, dtype=float)
    if np.any(d3d <= 0) or np.any(fc_ghz <= 0):
        raise ValueError("distance and carrier frequency must be positive")
    pl = 28.0 + 22.0 * np.log10(d3d) + 20.0 * np.log10(fc_ghz)
    return float(pl) if pl.ndim == 0 else pl


def draw_large_scale(geom: NodeGeometry, link, rng, fc_ghz=28.0) -> LinkLargeScale:
    """Draw shadowing and K-factor for one link.

    Consumes exactly two standard normals from ``rng``: shadowing first, then
    the K-factor.
    """
    link = Link(link)
    tx, rx = link.endpoints
    z_shadow = float(rng.standard_normal())
    z_k = float(rng.standard_normal())
    return LinkLargeScale(
        pathloss_db=pathloss_db(geom.distance_3d(tx, rx), fc_ghz),
        shadow_db=SHADOW_STD_DB * z_shadow,
        k_factor_db=K_MEAN_DB + K_STD_DB * z_k,
    )
