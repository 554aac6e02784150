"""Seeded Monte Carlo engine for session error and packet-count estimation.

Sessions are split into fixed-size batches; batch b always draws from the
substream (seed, b), so estimates are bit-identical for any worker count.
Every transmitted packet is decoded (power control meets the SINR target
exactly and SIC is error-free under perfect CSI), so the per-slot success
count is just the policy's packet count.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import policies
from .analytic import PacketCountDistribution
from .channel import RngStream, SlotGains, draw_exponential
from .config import SystemConfig
from .policies import PolicyKind, SlotDecision

DEFAULT_BATCH_SIZE = 50_000


@dataclass(frozen=True)
class SessionOutcome:
    """Result of one simulated session."""

    success: bool
    slots_used: int  # first slot at which the stream completed, w_s if it never did
    packets_sent: int


@dataclass(frozen=True)
class SessionStats:
    """Monte Carlo estimate of the session error probability with a 95% CI."""

    trials: int
    errors: int
    p_hat: float
    ci95_halfwidth: float
    seed: int


def _decision(policy, gains: SlotGains, ladder, omega) -> SlotDecision:
    if callable(policy) and not isinstance(policy, PolicyKind):
        return policy(gains, ladder, omega)
    if policy.variant == "oma":
        return policies.decide_oma(gains.own, ladder, omega)
    if policy.variant == "symmetric":
        level_gains = np.concatenate(([gains.own], gains.cross[: policy.depth - 1]))
        return policies.decide_symmetric(level_gains, ladder, omega)
    if policy.variant == "sdo":
        return policies.decide_sdo(gains.own, gains.cross, ladder, omega)
    return policies.decide_fo(gains.own, gains.cross, ladder, omega)


def run_session(policy, config: SystemConfig, stream: RngStream) -> SessionOutcome:
    """Simulate one session slot by slot, stopping once w packets have succeeded.

    `policy` is a PolicyKind, or any callable (gains, ladder, omega) -> SlotDecision
    for forcing degenerate behavior in tests.
    """
    ladder = config.ladder_for(policy if isinstance(policy, PolicyKind) else config.policy)
    done = 0
    sent = 0
    for t in range(1, config.w_s + 1):
        gains = _draw_gains_scalar(stream, config)
        dec = _decision(policy, gains, ladder, config.omega)
        done += dec.n_packets
        sent += dec.n_packets
        if done >= config.w:
            return SessionOutcome(success=True, slots_used=t, packets_sent=sent)
    return SessionOutcome(success=False, slots_used=config.w_s, packets_sent=sent)


def _draw_gains_scalar(stream: RngStream, config: SystemConfig) -> SlotGains:
    own = draw_exponential(stream, 1.0)
    if config.k == 1:
        return SlotGains(own=own)
    return SlotGains(own=own, cross=draw_exponential(stream, 1.0, size=config.k - 1))


def _slot_counts(policy: PolicyKind, config: SystemConfig, stream: RngStream, shape):
    """Vectorized per-slot packet counts with the given leading shape."""
    ladder = config.ladder_for(policy)
    omega = config.omega
    if policy.variant == "oma":
        own = draw_exponential(stream, 1.0, size=shape)
        return policies.oma_packet_counts(own, ladder.levels[0], omega)
    if policy.variant == "symmetric":
        gains = draw_exponential(stream, 1.0, size=shape + (policy.depth,))
        return policies.symmetric_packet_counts(gains, np.asarray(ladder.levels), omega)
    own = draw_exponential(stream, 1.0, size=shape)
    cross = draw_exponential(stream, 1.0, size=shape + (config.k - 1,))
    if policy.variant == "sdo":
        return policies.sdo_packet_counts(own, cross, ladder.levels[0], ladder.levels[1], omega)
    return policies.fo_packet_counts(own, cross, ladder.levels[0], ladder.levels[1], omega)


def _batch_errors(policy, config: SystemConfig, seed: int, batch_index: int, n_sessions: int) -> int:
    stream = RngStream(seed, batch_index)
    if callable(policy) and not isinstance(policy, PolicyKind):
        return sum(
            0 if run_session(policy, config, stream).success else 1 for _ in range(n_sessions)
        )
    counts = _slot_counts(policy, config, stream, (n_sessions, config.w_s))
    return int((counts.sum(axis=1) < config.w).sum())


def _batches(trials: int, batch_size: int):
    for b, start in enumerate(range(0, trials, batch_size)):
        yield b, min(batch_size, trials - start)


def estimate_session_error(
    policy,
    config: SystemConfig,
    trials: int,
    seed: int = 0,
    workers: int = 1,
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> SessionStats:
    """Monte Carlo estimate of the session error probability.

    Deterministic given (seed, trials, config, batch_size) for any number of
    workers: batches map to fixed substreams and the merge is a plain sum.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    jobs = list(_batches(trials, batch_size))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_batch_errors, policy, config, seed, b, n) for b, n in jobs]
            errors = sum(f.result() for f in futures)
    else:
        errors = sum(_batch_errors(policy, config, seed, b, n) for b, n in jobs)
    p_hat = errors / trials
    ci = 1.96 * math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return SessionStats(trials=trials, errors=errors, p_hat=p_hat, ci95_halfwidth=ci, seed=seed)


def estimate_alphas(
    policy,
    config: SystemConfig,
    trials: int,
    seed: int = 0,
    batch_size: int = 1_000_000,
) -> PacketCountDistribution:
    """Empirical per-slot packet-count distribution over `trials` independent slots.

    Feeds the generic Chernoff bound when no closed-form law is available
    (symmetric depth > 2, FO-NOMA).
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if callable(policy) and not isinstance(policy, PolicyKind):
        ladder = config.ladder_for(config.policy)
        counts = np.empty(trials, dtype=np.int64)
        stream = RngStream(seed, 0)
        for i in range(trials):
            counts[i] = _decision(policy, _draw_gains_scalar(stream, config), ladder, config.omega).n_packets
        max_n = int(counts.max())
        freq = np.bincount(counts, minlength=max_n + 1)
    else:
        max_n = policy.max_packets(config.k)
        freq = np.zeros(max_n + 1, dtype=np.int64)
        for b, n in _batches(trials, batch_size):
            counts = _slot_counts(policy, config, RngStream(seed, b), (n,))
            freq += np.bincount(counts, minlength=max_n + 1)
    return PacketCountDistribution(tuple(freq / trials))
