"""Block-diagonalization precoders and zero-forcing combiners.

Four transmit designs are provided for the two-user IRS downlink:

* ``PIB``: nulls only the cascaded UE1 channel and the direct UE2 channel,
  ignoring the IRS leakage toward UE2.
* ``FIB``: additionally nulls the IRS leakage ``G2 Omega J`` as a separate UE2
  channel and uses the composite UE2 channel as its signal space.
* ``NING_ADAPTED``: single-IRS adaptation of per-IRS orthogonalization; only
  UE2's precoder rejects interference (against the dominant BS->IRS
  subspace), UE1's precoder is a plain matched design.
* ``NO_IRS_BD``: classic two-user BD when UE1 has a direct BS link instead of
  the IRS.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import CombinerError, DimensionError, RankError
from .irs import cascade
from .matgebra import DEFAULT_RANK_TOL, null_space_basis, pseudo_inverse, svd


class MethodId(str, Enum):
    PIB = "PIB"
    FIB = "FIB"
    NING_ADAPTED = "NING_ADAPTED"
    NO_IRS_BD = "NO_IRS_BD"


@dataclass(frozen=True, eq=False)
class PrecoderSet:
    F1: np.ndarray
    F2: np.ndarray
    power: tuple  # watts per UE

    def scaled(self, factor):
        """Same directions with every per-UE power multiplied by ``factor``."""
        a = np.sqrt(factor)
        return PrecoderSet(self.F1 * a, self.F2 * a, (self.power[0] * factor, self.power[1] * factor))


@dataclass(frozen=True, eq=False)
class CombinerSet:
    W1: np.ndarray
    W2: np.ndarray


def _stack(blocks, cols):
    """Stack complementary blocks with each block scaled to unit Frobenius norm.

    Scaling rows leaves the null space unchanged but keeps a weak block (the
    IRS leakage is tens of dB below the direct link) from being lost under the
    rank threshold of a stronger one.
    """
    if isinstance(blocks, np.ndarray):
        blocks = [blocks]
    rows = []
    for b in blocks:
        b = np.asarray(b)
        if b.size == 0:
            continue
        if b.shape[1] != cols:
            raise DimensionError(f"complementary block {b.shape} does not have {cols} columns")
        nrm = np.linalg.norm(b)
        rows.append(b / nrm if nrm > 0 else b)
    if not rows:
        return np.zeros((0, cols), dtype=complex)
    return np.vstack(rows)


def bd_precoder(own, complementary, streams, power, rank_tol=DEFAULT_RANK_TOL):
    """BD precoder for one UE.

    The precoder lies in the null space of ``complementary`` (a matrix or a
    list of blocks) and spans the ``streams`` strongest modes of ``own``
    projected onto that null space. Columns are orthogonal with equal power and
    ``trace(F F^H) == power``.
    """
    own = np.asarray(own)
    M = own.shape[1]
    comp = _stack(complementary, M)
    if M < comp.shape[0] + streams:
        raise DimensionError(
            f"BD needs at least {comp.shape[0] + streams} transmit antennas, have {M}"
        )
    v_zero = null_space_basis(comp, rank_tol)
    if v_zero.shape[1] < streams:
        raise RankError(
            f"null space of the {comp.shape[0]}x{M} complementary channel has "
            f"{v_zero.shape[1]} dimensions, {streams} streams requested"
        )
    projected = own @ v_zero
    f = svd(projected)
    if len(f.s) < streams or f.s[streams - 1] <= rank_tol * f.s[0]:
        raise RankError(
            f"own channel projected onto the null space supports fewer than {streams} streams"
        )
    v_sig = f.v[:, :streams]
    F = v_zero @ v_sig
    return F * np.sqrt(power / np.real(np.trace(F @ F.conj().T)))


def _split(total_power):
    return total_power / 2.0, total_power / 2.0


def build_pib(channels, phase, streams, total_power, rank_tol=DEFAULT_RANK_TOL):
    h1 = cascade(channels.G1, phase, channels.J)
    p1, p2 = _split(total_power)
    F1 = bd_precoder(h1, channels.H2, streams, p1, rank_tol)
    F2 = bd_precoder(channels.H2, h1, streams, p2, rank_tol)
    return PrecoderSet(F1, F2, (p1, p2))


def build_fib(channels, phase, streams, total_power, rank_tol=DEFAULT_RANK_TOL):
    h1 = cascade(channels.G1, phase, channels.J)
    leak = cascade(channels.G2, phase, channels.J)
    p1, p2 = _split(total_power)
    F1 = bd_precoder(h1, [channels.H2, leak], streams, p1, rank_tol)
    F2 = bd_precoder(channels.H2 + leak, h1, streams, p2, rank_tol)
    return PrecoderSet(F1, F2, (p1, p2))


def build_ning_adapted(channels, phase, streams, total_power, rank_tol=DEFAULT_RANK_TOL):
    """UE2 rejects the dominant BS->IRS subspace; UE1 gets no nulling."""
    h1 = cascade(channels.G1, phase, channels.J)
    p1, p2 = _split(total_power)
    irs_subspace = svd(channels.J).vh[:streams]
    F1 = bd_precoder(h1, [], streams, p1, rank_tol)
    F2 = bd_precoder(channels.H2, irs_subspace, streams, p2, rank_tol)
    return PrecoderSet(F1, F2, (p1, p2))


def build_no_irs_benchmark(channels, ue1_direct, streams, total_power, rank_tol=DEFAULT_RANK_TOL):
    p1, p2 = _split(total_power)
    F1 = bd_precoder(ue1_direct, channels.H2, streams, p1, rank_tol)
    F2 = bd_precoder(channels.H2, ue1_direct, streams, p2, rank_tol)
    return PrecoderSet(F1, F2, (p1, p2))


def build_precoders(method, channels, phase, streams, total_power, ue1_direct=None,
                    rank_tol=DEFAULT_RANK_TOL):
    method = MethodId(method)
    if method is MethodId.PIB:
        return build_pib(channels, phase, streams, total_power, rank_tol)
    if method is MethodId.FIB:
        return build_fib(channels, phase, streams, total_power, rank_tol)
    if method is MethodId.NING_ADAPTED:
        return build_ning_adapted(channels, phase, streams, total_power, rank_tol)
    if ue1_direct is None:
        raise ValueError("NO_IRS_BD needs the direct UE1 channel")
    return build_no_irs_benchmark(channels, ue1_direct, streams, total_power, rank_tol)


def zf_combiner(effective, ue, rtol=1e-12):
    """Combiner ``W`` with ``W^H @ effective == I``."""
    s = np.linalg.svd(effective, compute_uv=False)
    if s.size == 0 or s[-1] <= rtol * s[0]:
        raise CombinerError(f"effective channel of {ue} is rank deficient (singular values {s})")
    return pseudo_inverse(effective).conj().T


def effective_channels(method, channels, phase, ue1_direct=None):
    """Intended channel of UE1 and the (direct, IRS) channel pair of UE2.

    The no-IRS benchmark has no reflected path toward UE2, so its IRS term is
    ``None``.
    """
    method = MethodId(method)
    if method is MethodId.NO_IRS_BD:
        return ue1_direct, channels.H2, None
    return (cascade(channels.G1, phase, channels.J), channels.H2,
            cascade(channels.G2, phase, channels.J))


def build_combiners(channels, phase, precoders, method, ue1_direct=None):
    """ZF combiners on UE1's intended channel and on UE2's direct channel."""
    h1, h2, _ = effective_channels(method, channels, phase, ue1_direct)
    W1 = zf_combiner(h1 @ precoders.F1, "UE1")
    W2 = zf_combiner(h2 @ precoders.F2, "UE2")
    return CombinerSet(W1, W2)
