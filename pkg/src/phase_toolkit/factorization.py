"""Associated polynomial of an autocorrelation and its reflected zero pairs.

The intensity of a signal with support length N is, up to a phase factor,
a polynomial of degree 2N-2 whose zeros occur in pairs reflected across
the unit circle.  This module builds that polynomial, finds its zeros with
multiplicities, and groups them into pairs; every later stage works with
the pairs only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG, ToleranceConfig
from .signals import Autocorrelation, _as_complex_vector, _readonly

_EPS = float(np.finfo(float).eps)


class RootFindingError(ValueError):
    """Root certification failed; `partial` holds the roots found so far."""

    def __init__(self, message: str, partial=()):
        super().__init__(message)
        self.partial = list(partial)


@dataclass(frozen=True, eq=False)
class AssociatedPolynomial:
    """P(z) = sum_k a[k-N+1] z^k with coefficients in ascending degree order.

    The coefficient sequence is conjugate palindromic because the
    autocorrelation is conjugate symmetric, so the zeros of P come in
    pairs (z, 1/conj(z)).
    """

    coeffs: np.ndarray

    def __post_init__(self):
        arr = _as_complex_vector(self.coeffs)
        if arr.size % 2 == 0:
            raise ValueError("associated polynomial needs odd coefficient count")
        scale = float(np.abs(arr).max())
        if scale == 0.0 or abs(arr[-1]) <= DEFAULT_CONFIG.trim_threshold * scale:
            raise ValueError("degenerate leading coefficient; trim support first")
        band = DEFAULT_CONFIG.tol(scale)
        if float(np.abs(arr - np.conj(arr[::-1])).max()) > band:
            raise ValueError("coefficients are not conjugate palindromic")
        object.__setattr__(self, "coeffs", _readonly(arr))

    @property
    def degree(self) -> int:
        return int(self.coeffs.size) - 1

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    def __call__(self, z):
        return np.polyval(self.coeffs[::-1], z)


def associated_polynomial(acf: Autocorrelation,
                          cfg: ToleranceConfig = DEFAULT_CONFIG) -> AssociatedPolynomial:
    """Polynomial whose coefficient of z^k is the autocorrelation at lag k-N+1."""
    del cfg  # validation thresholds live on the type itself
    return AssociatedPolynomial(np.array(acf.coeffs))


def _evaluation_bound(desc_abs: np.ndarray, magnitude: float) -> float:
    """Scale of rounding noise when evaluating the polynomial at |z| = magnitude."""
    return float(max(np.polyval(desc_abs, magnitude), desc_abs.max()))


def _polish(desc: np.ndarray, start: complex, max_iter: int) -> complex:
    """Newton iteration on the given (descending) coefficients."""
    deriv = np.polyder(desc)
    z = complex(start)
    for _ in range(max_iter):
        slope = np.polyval(deriv, z)
        if slope == 0:
            break
        step = np.polyval(desc, z) / slope
        z -= step
        if abs(step) <= 4.0 * _EPS * max(1.0, abs(z)):
            break
    return z


def _multiplicity_consistent(derivatives, abs_derivatives, z: complex, mult: int,
                             cfg: ToleranceConfig) -> bool:
    """True when P and its first mult-1 derivatives vanish at z but the next does not.

    Vanishing is judged against cfg.residual_tol, while "does not vanish"
    only has to clear the rounding noise of the evaluation (a few orders
    above machine epsilon): genuine high-order derivative values can sit far
    below any fixed fraction of the coefficient-sum bound.
    """
    mag = abs(z)
    for k in range(mult):
        bound = _evaluation_bound(abs_derivatives[k], mag)
        if abs(np.polyval(derivatives[k], z)) > cfg.residual_tol * bound:
            return False
    if mult < len(derivatives):
        bound = _evaluation_bound(abs_derivatives[mult], mag)
        if abs(np.polyval(derivatives[mult], z)) <= 1e4 * _EPS * bound:
            return False
    return True


def _gather_radius(mult: int, cfg: ToleranceConfig) -> float:
    # Eigenvalues of a multiplicity-m root scatter like eps**(1/m), so the
    # gathering radius must grow with the candidate multiplicity.
    if mult <= 1:
        return cfg.cluster_radius
    return max(cfg.cluster_radius, 10.0 * _EPS ** (1.0 / mult))


def cluster_roots(coeffs_ascending, cfg: ToleranceConfig = DEFAULT_CONFIG):
    """All zeros of a polynomial as (root, multiplicity) pairs.

    Companion-matrix eigenvalues are clustered top-down: for each candidate
    multiplicity m the nearby eigenvalues are averaged and the mean is
    polished with Newton's method on the (m-1)-th derivative, which has a
    simple zero at an m-fold root.  A cluster is accepted only if the value
    of P and its first m-1 derivatives at the polished point are at rounding
    level while the m-th derivative is decisively nonzero.
    """
    asc = _as_complex_vector(coeffs_ascending)
    nonzero = np.nonzero(np.abs(asc) > 0)[0]
    if nonzero.size == 0:
        raise ValueError("zero polynomial has no well-defined roots")
    asc = asc[: nonzero[-1] + 1]
    degree = asc.size - 1
    if degree == 0:
        return []

    desc = asc[::-1]
    derivatives = [desc]
    for _ in range(degree):
        derivatives.append(np.polyder(derivatives[-1]))
    abs_derivatives = [np.abs(d) for d in derivatives]

    remaining = sorted(np.roots(desc), key=lambda z: (z.real, z.imag))
    found = []
    while remaining:
        placed = False
        for mult in range(len(remaining), 0, -1):
            radius = _gather_radius(mult, cfg)
            for seed in remaining:
                span = radius * max(1.0, abs(seed))
                near = [w for w in remaining if abs(w - seed) <= span]
                if len(near) < mult:
                    continue
                near.sort(key=lambda w: abs(w - seed))
                group = near[:mult]
                center = complex(np.mean(group))
                root = _polish(derivatives[mult - 1], center, cfg.max_newton_iter)
                if not np.isfinite(root.real) or not np.isfinite(root.imag):
                    continue
                if not _multiplicity_consistent(derivatives, abs_derivatives, root, mult, cfg):
                    continue
                found.append((root, mult))
                for w in group:
                    remaining.remove(w)
                placed = True
                break
            if placed:
                break
        if not placed:
            raise RootFindingError(
                "root polishing did not converge to a certified multiplicity split",
                partial=found)
    found.sort(key=lambda item: (item[0].real, item[0].imag))
    return found


def find_roots(poly: AssociatedPolynomial,
               cfg: ToleranceConfig = DEFAULT_CONFIG):
    """Zeros of the associated polynomial as (root, multiplicity) pairs."""
    return cluster_roots(poly.coeffs, cfg)


@dataclass(frozen=True)
class ZeroPair:
    """A zero and its reflection across the unit circle.

    `zero` stores the representative outside the circle (or on it, in which
    case the reflection coincides with it).  `multiplicity` counts how many
    times the pair divides the associated polynomial, which equals the
    number of selection slots it contributes during enumeration.
    """

    zero: complex
    reflected: complex
    on_circle: bool
    multiplicity: int


@dataclass(frozen=True, eq=False)
class ZeroPairSet:
    """Grouped zero pairs of an associated polynomial plus its leading coefficient."""

    pairs: tuple
    leading: complex
    snapped: int = 0

    @property
    def support_len(self) -> int:
        """Support length N of the matching signals."""
        return 1 + sum(p.multiplicity for p in self.pairs)


def _sort_key(z: complex):
    return (z.real, z.imag)


def pair_roots(roots, cfg: ToleranceConfig = DEFAULT_CONFIG, *,
               leading: complex = 1.0 + 0.0j) -> ZeroPairSet:
    """Group (root, multiplicity) pairs into reflected zero pairs.

    Roots within `circle_tol` of the unit circle are snapped onto it and
    must carry even total multiplicity; every remaining root outside the
    circle must be matched by its reflection inside.  Anything else means
    the polynomial did not come from an autocorrelation.
    """
    on_circle = []
    inside = []
    outside = []
    total = 0
    for raw, mult in roots:
        z = complex(raw)
        mult = int(mult)
        if mult <= 0:
            raise ValueError("multiplicities must be positive")
        total += mult
        if abs(abs(z) - 1.0) <= cfg.circle_tol:
            on_circle.append([z / abs(z), mult])
        elif abs(z) > 1.0:
            outside.append((z, mult))
        else:
            inside.append([z, mult])
    if total % 2:
        raise ValueError(
            "input is not a valid autocorrelation spectrum: odd number of zeros")

    snapped = sum(m for _, m in on_circle)
    merged = []
    for z, mult in sorted(on_circle, key=lambda item: _sort_key(item[0])):
        if merged and abs(merged[-1][0] - z) <= 2.0 * cfg.circle_tol:
            merged[-1][1] += mult
        else:
            merged.append([z, mult])

    pairs = []
    for z, mult in merged:
        if mult % 2:
            raise ValueError(
                "input is not a valid autocorrelation spectrum: "
                "on-circle zero with odd multiplicity")
        pairs.append(ZeroPair(z, z, True, mult // 2))

    for z, mult in sorted(outside, key=lambda item: _sort_key(item[0])):
        target = 1.0 / z.conjugate()
        best = None
        best_gap = np.inf
        for idx, (candidate, _) in enumerate(inside):
            gap = abs(candidate - target)
            if gap < best_gap:
                best, best_gap = idx, gap
        if best is None or best_gap > cfg.pair_tol * max(1.0, abs(target)):
            raise ValueError(
                "input is not a valid autocorrelation spectrum: "
                f"zero {z!r} has no reflected partner")
        partner_mult = inside[best][1]
        if partner_mult != mult:
            raise ValueError(
                "input is not a valid autocorrelation spectrum: "
                f"multiplicity mismatch at zero {z!r}")
        del inside[best]
        pairs.append(ZeroPair(z, target, False, mult))
    if inside:
        raise ValueError(
            "input is not a valid autocorrelation spectrum: "
            f"zero {inside[0][0]!r} has no reflected partner")

    pairs.sort(key=lambda p: _sort_key(p.zero))
    return ZeroPairSet(tuple(pairs), complex(leading), snapped)


def pairs_from_zeros(zeros, leading: complex = 1.0 + 0.0j,
                     cfg: ToleranceConfig = DEFAULT_CONFIG) -> ZeroPairSet:
    """Zero pairs generated by an explicit zero multiset of one signal.

    Each given zero contributes one selection slot; zeros that are mutual
    reflections (or repeats) accumulate multiplicity in a single pair.
    """
    groups = []
    for raw in zeros:
        z = complex(raw)
        if z == 0:
            raise ValueError("zero selections must avoid the origin")
        if abs(abs(z) - 1.0) <= cfg.circle_tol:
            representative = z / abs(z)
            circled = True
        else:
            representative = z if abs(z) > 1.0 else 1.0 / z.conjugate()
            circled = False
        placed = False
        for group in groups:
            if group[2] == circled and abs(group[0] - representative) <= \
                    cfg.cluster_radius * max(1.0, abs(representative)):
                group[1] += 1
                placed = True
                break
        if not placed:
            groups.append([representative, 1, circled])
    pairs = [ZeroPair(rep, rep if circled else 1.0 / rep.conjugate(), circled, mult)
             for rep, mult, circled in groups]
    pairs.sort(key=lambda p: _sort_key(p.zero))
    return ZeroPairSet(tuple(pairs), complex(leading), 0)
