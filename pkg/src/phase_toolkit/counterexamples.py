"""Constructive ambiguity families defeating common side information.

Knowing all component moduli, or all component phases, on top of the
Fourier intensity still fails to pin down a signal in general.  The two
factories here build explicit witnesses: a pair with identical moduli
everywhere, and families of distinct non-negative signals sharing one
intensity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG, ToleranceConfig
from .enumeration import enumerate_solutions, synthesize
from .factorization import pairs_from_zeros
from .signals import (Signal, autocorrelation, canonicalize, form_distance,
                      fourier_intensity)


@dataclass(frozen=True, eq=False)
class CounterexamplePair:
    """Two signals sharing an intensity without being trivially equivalent.

    `shared_moduli` / `shared_phases` record which additional data the pair
    has in common (the intensity always matches).
    """

    x: Signal
    y: Signal
    shared_moduli: bool
    shared_phases: bool


def _probe_grid(count: int = 128) -> np.ndarray:
    # Fixed irrational offset keeps the probes away from symmetry points.
    return np.linspace(-np.pi, np.pi, count, endpoint=False) + 0.0123456789


def verify_counterexample(pair: CounterexamplePair,
                          cfg: ToleranceConfig = DEFAULT_CONFIG,
                          probes=None) -> dict:
    """Measured deviations of the pair's shared and differing properties.

    Returns a dict with the worst intensity gap over the probe grid, the
    worst componentwise modulus and phase gaps, and the canonical-form
    distance modulo all trivial transforms.
    """
    if probes is None:
        probes = _probe_grid()
    intensity_gap = float(np.abs(fourier_intensity(pair.x, probes)
                                 - fourier_intensity(pair.y, probes)).max())
    vx, vy = pair.x.values, pair.y.values
    if vx.size == vy.size:
        modulus_gap = float(np.abs(np.abs(vx) - np.abs(vy)).max())
        phase_gap = float(np.abs(np.angle(vx) - np.angle(vy)).max())
    else:
        modulus_gap = phase_gap = float("inf")
    canonical_gap = form_distance(
        canonicalize(pair.x, modulo_reflection=True, cfg=cfg),
        canonicalize(pair.y, modulo_reflection=True, cfg=cfg))
    return {
        "intensity_gap": intensity_gap,
        "modulus_gap": modulus_gap,
        "phase_gap": phase_gap,
        "canonical_gap": canonical_gap,
    }


def magnitude_counterexample(support_len: int, split_radius: float,
                             repeated_radius: float,
                             cfg: ToleranceConfig = DEFAULT_CONFIG) -> CounterexamplePair:
    """A pair with equal intensity and equal componentwise moduli.

    The first signal's zeros are {r, -1/r} plus a repeated imaginary zero
    i*s of multiplicity N-3; swapping the real zeros for their reflections
    {1/r, -r} preserves every modulus but changes the signal.

    Args:
        support_len: support length N, at least 4.
        split_radius: radius r > 1 of the reciprocal real zero pair.
        repeated_radius: radius s > 1 of the repeated imaginary zero.
    """
    n = int(support_len)
    if n <= 3:
        raise ValueError("support length must exceed 3")
    r = float(split_radius)
    s = float(repeated_radius)
    if not (r > 1.0 and s > 1.0):
        raise ValueError("zero radii must exceed 1")
    zeros_x = [r, -1.0 / r] + [1j * s] * (n - 3)
    zeros_y = [1.0 / r, -r] + [1j * s] * (n - 3)
    # Common normalization: both zero multisets have the same modulus product.
    leading = s ** (n - 3)
    x = synthesize(zeros_x, leading)
    y = synthesize(zeros_y, leading)
    pair = CounterexamplePair(x, y, shared_moduli=True, shared_phases=False)
    report = verify_counterexample(pair, cfg)
    scale = float(np.abs(x.values).max())
    if report["modulus_gap"] > cfg.tol(scale) * 100.0:
        raise ArithmeticError("construction lost the shared moduli")
    if report["intensity_gap"] > cfg.tol(scale ** 2) * 100.0:
        raise ArithmeticError("construction lost the shared intensity")
    return pair


def phase_counterexample(zeros, support_len: int | None = None,
                         cfg: ToleranceConfig = DEFAULT_CONFIG) -> list:
    """All nontrivial ambiguities of a signal with negative real zeros.

    Every zero selection then has non-negative real components, so each
    enumerated class shares the full phase information arg x[n] = 0.  The
    input zeros give the reference signal; one pair per remaining class
    (modulo rotations, shifts and reflections) is returned.

    Args:
        zeros: N-1 negative real zeros; at least two must differ from -1,
            otherwise no nontrivial ambiguity exists.
        support_len: optional support length N for cross-validation.
    """
    items = [complex(z) for z in zeros]
    if support_len is not None and len(items) != int(support_len) - 1:
        raise ValueError(
            f"expected {int(support_len) - 1} zeros for support length {support_len}")
    if not items:
        raise ValueError("at least two zeros are required")
    for z in items:
        if abs(z.imag) > cfg.tol(abs(z)) or z.real >= 0:
            raise ValueError(f"zero {z!r} is not a negative real")
    off_circle = [z for z in items if abs(abs(z) - 1.0) > cfg.circle_tol]
    if len(off_circle) < 2:
        raise ValueError("no nontrivial ambiguity exists")

    reference = synthesize(items, np.prod([abs(z) for z in items]))
    top_lag = complex(np.conj(reference.values[0]) * reference.values[-1])
    pairs = pairs_from_zeros(items, leading=top_lag, cfg=cfg)
    solutions = enumerate_solutions(pairs, modulo_reflection=True, cfg=cfg)

    reference_form = canonicalize(reference, modulo_reflection=True, cfg=cfg)
    gaps = [form_distance(cls.canonical, reference_form) for cls in solutions.classes]
    own = int(np.argmin(gaps))
    scale = float(np.abs(reference.values).max())
    if gaps[own] > cfg.dedupe_tol * scale:
        raise ArithmeticError("enumeration lost the reference signal's class")

    out = []
    for idx, cls in enumerate(solutions.classes):
        if idx == own:
            continue
        partner = cls.signal()
        worst_phase = float(np.abs(np.angle(partner.values)).max())
        if worst_phase > cfg.tol(np.pi) * 100.0:
            raise ArithmeticError("enumerated class is not non-negative")
        out.append(CounterexamplePair(reference, partner,
                                      shared_moduli=False, shared_phases=True))
    return out
