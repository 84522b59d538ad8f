"""Uniqueness criteria decided from the zero set of one solution.

Each criterion asks whether some admissible subset of the zeros can be
reflected across the unit circle without breaking the side information
(known moduli or phases of individual components).  The tests are exact
algebraic identities in the elementary symmetric polynomials of the zero
set, evaluated within a tolerance band.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_CONFIG, ToleranceConfig

ROTATION = "rotation"
ROTATION_REFLECTION = "rotation_reflection"


def _zeros_of(source) -> tuple:
    zeros = getattr(source, "zeros", source)
    return tuple(complex(z) for z in zeros)


def elementary_symmetric_all(zeros) -> np.ndarray:
    """All elementary symmetric polynomials S_0..S_k of a zero multiset."""
    items = _zeros_of(zeros)
    table = np.zeros(len(items) + 1, dtype=complex)
    table[0] = 1.0
    for count, z in enumerate(items, start=1):
        for slot in range(count, 0, -1):
            table[slot] += z * table[slot - 1]
    return table


def elementary_symmetric(zeros, order: int) -> complex:
    """S_order of the multiset; zero outside 0..len(zeros)."""
    items = _zeros_of(zeros)
    if order < 0 or order > len(items):
        return 0j
    return complex(elementary_symmetric_all(items)[order])


def modified_zero_set(zeros, subset) -> tuple:
    """Reflect the zeros at the given positions across the unit circle."""
    out = list(_zeros_of(zeros))
    for position in subset:
        z = out[position]
        if z == 0:
            raise ValueError("cannot reflect a zero at the origin")
        out[position] = 1.0 / z.conjugate()
    return tuple(out)


@dataclass(frozen=True)
class SubsetFamily:
    """Admissible reflection subsets over the positions of a zero multiset.

    Positions holding on-circle zeros are fixed points of the reflection
    and never enter a subset.  When two positions hold zeros that are
    mutual reflections, reflecting both merely permutes the multiset, so
    such complete pairs are excluded as well.  The optional flags drop the
    subset of all free (unpaired, off-circle) positions or the exact full
    set; those reflections reproduce a conjugate-reflected signal rather
    than a new one.
    """

    zeros: tuple
    exclude_full_free: bool = False
    exclude_exact_full: bool = False
    cfg: ToleranceConfig = field(default=DEFAULT_CONFIG)

    def __post_init__(self):
        object.__setattr__(self, "zeros", _zeros_of(self.zeros))

    def eligible_positions(self) -> tuple:
        return tuple(i for i, z in enumerate(self.zeros)
                     if abs(abs(z) - 1.0) > self.cfg.circle_tol)

    def internal_pairs(self) -> tuple:
        eligible = self.eligible_positions()
        pairs = []
        for a, b in itertools.combinations(eligible, 2):
            if abs(self.zeros[a] * self.zeros[b].conjugate() - 1.0) <= self.cfg.pair_tol:
                pairs.append((a, b))
        return tuple(pairs)

    def free_positions(self) -> tuple:
        paired = {i for pair in self.internal_pairs() for i in pair}
        return tuple(i for i in self.eligible_positions() if i not in paired)

    def masks(self):
        """Yield admissible subsets as sorted position tuples."""
        eligible = self.eligible_positions()
        pairs = self.internal_pairs()
        free = set(self.free_positions())
        everything = frozenset(range(len(self.zeros)))
        for take in range(1, len(eligible) + 1):
            for combo in itertools.combinations(eligible, take):
                chosen = set(combo)
                if any(a in chosen and b in chosen for a, b in pairs):
                    continue
                if self.exclude_full_free and chosen == free:
                    continue
                if self.exclude_exact_full and chosen == everything:
                    continue
                yield combo


@dataclass(frozen=True)
class Violation:
    """An admissible subset meeting the ambiguity condition, with its residual."""

    mask: tuple
    residual: float


@dataclass(frozen=True, eq=False)
class CriterionReport:
    """Outcome of a uniqueness criterion.

    `equivalence_kind` names the quotient under which uniqueness is
    claimed.  `borderline` is set when some subset lands within a decade of
    the decision band, meaning the verdict deserves a cross-check against
    brute-force enumeration.
    """

    unique: bool
    equivalence_kind: str
    violations: tuple
    borderline: bool = False


def _in_band(residual: float, cfg: ToleranceConfig) -> bool:
    return 0.1 * cfg.criterion_tol < residual <= 10.0 * cfg.criterion_tol


def check_magnitude_uniqueness(zeros, end_offset: int, support_len: int,
                               cfg: ToleranceConfig = DEFAULT_CONFIG) -> CriterionReport:
    """Is a signal determined by its intensity plus |x[N-1-end_offset]|?

    For odd support length and the centered component the claim is modulo
    rotations and conjugate reflections (the reflection always preserves
    the centered modulus), otherwise modulo rotations alone.
    """
    items = _zeros_of(zeros)
    n = int(support_len)
    if len(items) != n - 1:
        raise ValueError(f"expected {n - 1} zeros, got {len(items)}")
    if not 0 <= end_offset <= n - 1:
        raise ValueError(f"component offset {end_offset} outside 0..{n - 1}")
    centered = (n % 2 == 1) and (end_offset == (n - 1) // 2)
    family = SubsetFamily(items, exclude_full_free=centered, cfg=cfg)
    reference = abs(elementary_symmetric(items, end_offset))
    violations = []
    borderline = False
    for mask in family.masks():
        reflected = modified_zero_set(items, mask)
        weight = math.prod(abs(items[i]) for i in mask)
        candidate = weight * abs(elementary_symmetric(reflected, end_offset))
        scale = max(reference, candidate, 1.0)
        residual = abs(reference - candidate) / scale
        if residual <= cfg.criterion_tol:
            violations.append(Violation(mask, residual))
        borderline = borderline or _in_band(residual, cfg)
    kind = ROTATION_REFLECTION if centered else ROTATION
    return CriterionReport(not violations, kind, tuple(violations), borderline)


def check_all_moduli_uniqueness(zeros, support_len: int,
                                cfg: ToleranceConfig = DEFAULT_CONFIG) -> CriterionReport:
    """Is a signal determined by its intensity plus all component moduli?

    Non-uniqueness requires one admissible reflection subset to preserve
    every componentwise modulus at once.  If every such subset produces the
    fully reflected zero multiset, the only ambiguity is the conjugate
    reflection itself and the equivalence is widened accordingly.
    """
    items = _zeros_of(zeros)
    n = int(support_len)
    if len(items) != n - 1:
        raise ValueError(f"expected {n - 1} zeros, got {len(items)}")
    family = SubsetFamily(items, cfg=cfg)
    reference = np.abs(elementary_symmetric_all(items))
    full_reflection = sorted(modified_zero_set(items, range(len(items))),
                             key=lambda z: (z.real, z.imag))
    violations = []
    borderline = False
    only_reflections = True
    for mask in family.masks():
        reflected = modified_zero_set(items, mask)
        weight = math.prod(abs(items[i]) for i in mask)
        candidate = weight * np.abs(elementary_symmetric_all(reflected))
        scale = np.maximum(np.maximum(reference, candidate), 1.0)
        residuals = np.abs(reference - candidate) / scale
        worst = float(residuals.max())
        borderline = borderline or any(_in_band(float(r), cfg) for r in residuals)
        if worst <= cfg.criterion_tol:
            violations.append(Violation(mask, worst))
            ordered = sorted(reflected, key=lambda z: (z.real, z.imag))
            gaps = [abs(a - b) for a, b in zip(ordered, full_reflection)]
            if max(gaps, default=0.0) > cfg.tol(max(abs(z) for z in items) if items else 1.0):
                only_reflections = False
    if violations and only_reflections:
        # every modulus-preserving subset is the conjugate reflection itself,
        # so the signal is determined once that reflection is identified away
        return CriterionReport(True, ROTATION_REFLECTION, (), borderline)
    return CriterionReport(not violations, ROTATION, tuple(violations), borderline)


def _balance_report(pivot: complex, partner: complex, mask, cfg: ToleranceConfig):
    """Evaluate the alignment conditions Im(conj(pivot) * partner) = 0, Re >= 0."""
    aligned = pivot.conjugate() * partner
    scale = max(abs(pivot) * abs(partner), 1.0)
    cross = abs(aligned.imag) / scale
    meets = cross <= cfg.criterion_tol and aligned.real >= -cfg.criterion_tol * scale
    borderline = _in_band(cross, cfg) or (abs(aligned.real) / scale <= 10.0 * cfg.criterion_tol)
    violation = Violation(mask, cross) if meets else None
    return violation, borderline


def check_phase_uniqueness_endpoint(zeros, end_offset: int, support_len: int,
                                    cfg: ToleranceConfig = DEFAULT_CONFIG) -> CriterionReport:
    """Is a signal determined by its intensity plus arg x[N-1] and arg x[N-1-end_offset]?

    The signal is ambiguous exactly when some admissible reflection subset
    keeps S_end_offset of the zero set aligned (zero cross term, non-negative
    dot term) with its reflected counterpart.
    """
    items = _zeros_of(zeros)
    n = int(support_len)
    if len(items) != n - 1:
        raise ValueError(f"expected {n - 1} zeros, got {len(items)}")
    if not 1 <= end_offset <= n - 2:
        raise ValueError(f"component offset {end_offset} outside 1..{n - 2}")
    family = SubsetFamily(items, cfg=cfg)
    pivot = elementary_symmetric(items, end_offset)
    violations = []
    borderline = False
    for mask in family.masks():
        partner = elementary_symmetric(modified_zero_set(items, mask), end_offset)
        violation, near = _balance_report(pivot, partner, mask, cfg)
        borderline = borderline or near
        if violation is not None:
            violations.append(violation)
    return CriterionReport(not violations, ROTATION, tuple(violations), borderline)


def check_phase_uniqueness_two_points(zeros, first_offset: int, second_offset: int,
                                      support_len: int,
                                      cfg: ToleranceConfig = DEFAULT_CONFIG) -> CriterionReport:
    """Is a signal determined by its intensity plus two interior phases?

    The phases of x[N-1-first_offset] and x[N-1-second_offset] are known.
    When the two offsets sum to N-1 the conjugate reflection always
    survives, so the full reflection subset is excluded and uniqueness is
    claimed modulo rotations and reflections.
    """
    items = _zeros_of(zeros)
    n = int(support_len)
    if len(items) != n - 1:
        raise ValueError(f"expected {n - 1} zeros, got {len(items)}")
    for offset in (first_offset, second_offset):
        if not 1 <= offset <= n - 2:
            raise ValueError(f"component offset {offset} outside 1..{n - 2}")
    if first_offset == second_offset:
        raise ValueError("the two component offsets must differ")
    symmetric = (first_offset + second_offset == n - 1)
    family = SubsetFamily(items, exclude_exact_full=symmetric, cfg=cfg)
    pivot = elementary_symmetric(items, first_offset)
    second = elementary_symmetric(items, second_offset)
    violations = []
    borderline = False
    for mask in family.masks():
        reflected = modified_zero_set(items, mask)
        partner = (elementary_symmetric(reflected, second_offset).conjugate()
                   * second * elementary_symmetric(reflected, first_offset))
        violation, near = _balance_report(pivot, partner, mask, cfg)
        borderline = borderline or near
        if violation is not None:
            violations.append(violation)
    kind = ROTATION_REFLECTION if symmetric else ROTATION
    return CriterionReport(not violations, kind, tuple(violations), borderline)
