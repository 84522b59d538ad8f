"""Shared helpers for the test suite."""

import numpy as np

from phase_toolkit import (Constraint, autocorrelation, enumerate_solutions,
                           filter_by_constraints, pairs_from_zeros, synthesize)


def random_signal(rng, n, complex_valued=True):
    """Random length-n signal whose boundary entries stay away from zero."""
    if complex_valued:
        vals = rng.normal(size=n) + 1j * rng.normal(size=n)
    else:
        vals = rng.normal(size=n) + 0j
    for j in (0, n - 1):
        while abs(vals[j]) < 0.2:
            bump = rng.normal() + (1j * rng.normal() if complex_valued else 0.0)
            vals[j] += bump
    return vals


def random_zero_set(rng, count, min_gap=0.15):
    """Random off-circle zeros, no reflected pairs, pairwise separated."""
    zeros = []
    while len(zeros) < count:
        z = rng.normal(scale=1.2) + 1j * rng.normal(scale=1.2)
        r = abs(z)
        if r < 1e-2 or abs(r - 1.0) < min_gap:
            continue
        if r < 1.0:
            z = 1.0 / np.conj(z)
        if any(abs(z - w) < min_gap or abs(z * np.conj(w) - 1.0) < min_gap
               for w in zeros):
            continue
        zeros.append(complex(z))
    return zeros


def probe_grid(count=128):
    return np.linspace(-np.pi, np.pi, count, endpoint=False)


def intensity_gap(sig_a, sig_b, omegas):
    """Largest pointwise Fourier-intensity difference over the given grid."""
    from phase_toolkit import fourier_intensity

    ia = fourier_intensity(sig_a, omegas)
    ib = fourier_intensity(sig_b, omegas)
    return float(np.max(np.abs(ia - ib)))


def classes_matching_constraints(zeros, targets, modulo_reflection, cfg=None):
    """Brute-force oracle: surviving ambiguity classes for a synthesized signal.

    A reference signal is synthesized from ``zeros`` with a positive real
    scale, every competitor sharing its intensity is enumerated, and the
    classes are filtered by constraints read off the reference at the
    (kind, index) pairs in ``targets``.  Returns the filtered SolutionSet.
    """
    from phase_toolkit import DEFAULT_CONFIG

    cfg = cfg or DEFAULT_CONFIG
    x = synthesize(zeros, float(np.prod(np.abs(zeros))))
    top_lag = complex(np.conj(x.values[0]) * x.values[-1])
    pairs = pairs_from_zeros(zeros, leading=top_lag, cfg=cfg)
    classes = enumerate_solutions(pairs, modulo_reflection=modulo_reflection,
                                  cfg=cfg)
    constraints = constraints_from_signal(x, targets)
    return filter_by_constraints(classes, constraints, cfg), x


def constraints_from_signal(x, targets):
    """Build constraints reading off the signal as (kind, index) pairs."""
    out = []
    for kind, idx in targets:
        v = x.values[idx]
        if kind == "magnitude":
            out.append(Constraint("magnitude", idx, float(abs(v))))
        else:
            out.append(Constraint("phase", idx, float(np.angle(v))))
    return out


def acf_of(values, offset=0):
    from phase_toolkit import Signal

    return autocorrelation(Signal(offset, values))
