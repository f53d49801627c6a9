"""Maximally entangled states, phase-and-shift bases, and families of them.

A basis is generated from one entangled seed state by the phase-and-shift
operators indexed by ring element pairs (freq, shift): freq multiplies the
summation variable inside the additive character, shift translates the
second factor.  Each seed is twisted by a permutation that rescales the
second tensor factor by a unit of the ring; a family collects the bases
of a set of units whose pairwise differences are again units.

States stay sparse and exact: d entries of (flat index, phase fraction)
with an implicit common amplitude 1/sqrt(d).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonGenericCharacter, NotAUnit, TheoremNotApplicable, TooSmall
from .ring import Kind, Ring, fields_ring, zd_ring


@dataclass(frozen=True)
class ScalePermutation:
    """The permutation r -> unit*r of element indices (a unitary on C^d)."""

    unit: tuple
    perm: tuple[int, ...]

    def compose(self, other: "ScalePermutation", ring: Ring) -> "ScalePermutation":
        return ScalePermutation(
            unit=ring.mul(self.unit, other.unit),
            perm=tuple(self.perm[j] for j in other.perm),
        )


def scale_permutation(ring: Ring, unit) -> ScalePermutation:
    if not ring.is_unit(unit):
        raise NotAUnit(f"{ring.format_element(unit)} is not a unit of {ring!r}")
    ui = ring.index(unit)
    mul = ring.mul_table
    return ScalePermutation(unit=unit, perm=tuple(mul[ui][r] for r in range(ring.d)))


@dataclass(frozen=True)
class SparseState:
    """One maximally entangled state on C^d (x) C^d.

    entries hold (flat index, phase) pairs sorted by flat index, exactly
    d of them, each with implicit amplitude 1/sqrt(d); flat = row*d + col
    where row indexes the first factor.  freq and shift are the ring
    element labels the state was generated from.
    """

    dim: int
    freq: tuple
    shift: tuple
    entries: tuple[tuple[int, Fraction], ...]

    def rows(self) -> list[int]:
        return [flat // self.dim for flat, _ in self.entries]

    def cols(self) -> list[int]:
        return [flat % self.dim for flat, _ in self.entries]

    def is_permutation_supported(self) -> bool:
        """Distinct first-factor and distinct second-factor indices."""
        return (
            len(set(self.rows())) == self.dim
            and len(set(self.cols())) == self.dim
        )


@dataclass(frozen=True)
class MEBasis:
    """d^2 states indexed by (freq, shift) in ring enumeration order."""

    dim: int
    unit: tuple
    states: tuple[SparseState, ...]

    def state(self, freq_index: int, shift_index: int) -> SparseState:
        return self.states[freq_index * self.dim + shift_index]


@dataclass(frozen=True)
class Family:
    """Bases built over one ring from a set of units satisfying the
    pairwise-unit-difference condition."""

    ring: Ring
    units: tuple
    bases: tuple[MEBasis, ...]


@dataclass(frozen=True)
class SetConditionResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def build_state(ring: Ring, unit, freq, shift) -> SparseState:
    """The state (1/sqrt d) sum_r char(r*freq) |e_r> (x) |e_{unit*(r+shift)}>."""
    if not ring.is_unit(unit):
        raise NotAUnit(f"{ring.format_element(unit)} is not a unit of {ring!r}")
    d = ring.d
    add = ring.add_table
    mul = ring.mul_table
    char = ring.character_by_index
    ui, fi, si = ring.index(unit), ring.index(freq), ring.index(shift)
    entries = sorted(
        (r * d + mul[ui][add[r][si]], char[mul[r][fi]]) for r in range(d)
    )
    return SparseState(dim=d, freq=freq, shift=shift, entries=tuple(entries))


def build_basis(ring: Ring, unit) -> MEBasis:
    if not ring.is_generic:
        raise NonGenericCharacter(f"{ring!r} has no generic character under this construction")
    if not ring.is_unit(unit):
        raise NotAUnit(f"{ring.format_element(unit)} is not a unit of {ring!r}")
    els = ring.elements
    states = tuple(
        build_state(ring, unit, freq, shift) for freq in els for shift in els
    )
    return MEBasis(dim=ring.d, unit=unit, states=states)


def validate_set_condition(ring: Ring, elements) -> SetConditionResult:
    """Every element a unit, no duplicates, every pairwise difference a unit."""
    seen = set()
    for x in elements:
        if x in seen:
            return SetConditionResult(False, f"duplicate element {ring.format_element(x)}")
        seen.add(x)
        if not ring.is_unit(x):
            return SetConditionResult(False, f"{ring.format_element(x)} is not a unit")
    elements = list(elements)
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            diff = ring.sub(elements[i], elements[j])
            if not ring.is_unit(diff):
                return SetConditionResult(
                    False,
                    f"difference of {ring.format_element(elements[i])} and "
                    f"{ring.format_element(elements[j])} is not a unit",
                )
    return SetConditionResult(True)


def diagonal_unit_set(ring: Ring) -> list:
    """Largest unit set with unit differences built componentwise.

    Takes the l-th unit of every component (enumeration order) for
    l = 0 .. q1-2, where q1 is the smallest component size.  Only defined
    for direct sums of fields with q1 >= 3: in a field every nonzero
    difference is a unit, so any componentwise-distinct choice works.
    """
    if any(c.kind is not Kind.FIELD for c in ring.components):
        raise TheoremNotApplicable("construction needs every component to be a field")
    q1 = ring.components[0].size
    if q1 < 3:
        raise TheoremNotApplicable(
            f"smallest component size is {q1}; need at least 3 for two or more bases"
        )
    unit_lists = [c.elements()[1:] for c in ring.components]  # nonzero, encoding order
    return [tuple(units[l] for units in unit_lists) for l in range(q1 - 1)]


def baseline_unit_set(ring: Ring) -> list:
    """The set {1, ..., p1-1} of scalar units, p1 the smallest prime of d.

    Scalars below every prime factor are units with unit differences;
    this is the largest such set available in Z_d.
    """
    p1 = min(c.p for c in ring.components)
    return [ring.scalar(k) for k in range(1, p1)]


def family_from_units(ring: Ring, units, require_condition: bool = True) -> Family:
    """Build one basis per unit.  With require_condition the set must pass
    validate_set_condition; disabling it permits deliberately bad families
    for negative testing."""
    if require_condition:
        res = validate_set_condition(ring, units)
        if not res:
            raise NotAUnit(f"set violates the unit-difference condition: {res.reason}")
    bases = tuple(build_basis(ring, u) for u in units)
    return Family(ring=ring, units=tuple(units), bases=bases)


def build_family(d: int, ring_mode: str = "fields", allow_single: bool = False) -> Family:
    """Construct the standard family for dimension d.

    ring_mode "fields" uses the direct sum of fields with the diagonal
    unit set (q1 - 1 bases); "zd" uses Z_d with the scalar baseline set
    (p1 - 1 bases).  allow_single downgrades the q1 = 2 failure of fields
    mode to a single-basis family.
    """
    if d < 2:
        raise TooSmall(f"need d >= 2, got {d}")
    if ring_mode == "fields":
        ring = fields_ring(d)
        try:
            chosen = diagonal_unit_set(ring)
        except TheoremNotApplicable:
            if not allow_single:
                raise
            chosen = [ring.one]
    elif ring_mode == "zd":
        ring = zd_ring(d)
        chosen = baseline_unit_set(ring)
    else:
        raise ValueError(f"unknown ring mode {ring_mode!r}")
    if not chosen:
        raise TooSmall(f"no admissible units for d={d} in {ring_mode} mode")
    return family_from_units(ring, chosen)
