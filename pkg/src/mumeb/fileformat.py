"""Bit-exact JSON file format for families, plus report serialization.

Phases are stored as integer pairs, never floats, so a family survives
the file boundary without losing exactness.  Keys are emitted in a fixed
order and elements as nested coefficient lists (field parts) or plain
integers (mod parts); serialize -> parse -> serialize is byte-identical.

The optional dense export adds per-state amplitude vectors as decimal
pairs for external linear-algebra tools; parsers ignore that block.
"""

from __future__ import annotations

import json

from .errors import BadSpec, NonPrime, ParseError, ShapeMismatch
from .ring import ComponentSpec, Kind, Ring, RingSpec, phase
from .verify import Report, to_dense
from .weyl import Family, MEBasis, SparseState

FORMAT_VERSION = 1


def family_to_dict(family: Family, dense: bool = False) -> dict:
    ring = family.ring
    components = []
    for comp in ring.components:
        entry = {"kind": comp.kind.value, "p": comp.p, "a": comp.a}
        if comp.kind is Kind.FIELD:
            entry["modulus"] = list(comp.modulus)
        components.append(entry)
    bases = []
    for basis in family.bases:
        states = []
        for state in basis.states:
            record = {
                "xi": ring.element_to_json(state.freq),
                "eta": ring.element_to_json(state.shift),
                "entries": [
                    [flat, p.numerator, p.denominator] for flat, p in state.entries
                ],
            }
            if dense:
                vec = to_dense(state)
                record["amplitudes"] = [
                    [format(z.real, ".17g"), format(z.imag, ".17g")] for z in vec
                ]
            states.append(record)
        bases.append({"b": ring.element_to_json(basis.unit), "states": states})
    return {
        "format_version": FORMAT_VERSION,
        "d": ring.d,
        "ring": {"components": components},
        "set": [ring.element_to_json(u) for u in family.units],
        "bases": bases,
    }


def serialize_family(family: Family, dense: bool = False) -> str:
    return json.dumps(family_to_dict(family, dense=dense), separators=(",", ":")) + "\n"


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParseError(message)


def _as_int(value, what: str) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), f"{what} must be an integer")
    return value


def _parse_ring(obj) -> Ring:
    _require(isinstance(obj, dict), "ring must be an object")
    raw = obj.get("components")
    _require(isinstance(raw, list) and raw, "ring.components must be a non-empty list")
    specs = []
    for entry in raw:
        _require(isinstance(entry, dict), "ring component must be an object")
        kind = entry.get("kind")
        _require(kind in (Kind.FIELD.value, Kind.MOD.value), f"unknown component kind {kind!r}")
        p = _as_int(entry.get("p"), "component p")
        a = _as_int(entry.get("a"), "component a")
        modulus = None
        if kind == Kind.FIELD.value:
            mod_raw = entry.get("modulus")
            _require(
                isinstance(mod_raw, list)
                and all(isinstance(c, int) and not isinstance(c, bool) for c in mod_raw),
                "field component modulus must be a list of integers",
            )
            modulus = tuple(mod_raw)
        specs.append(ComponentSpec(p, a, Kind(kind), modulus))
    try:
        return Ring(RingSpec(tuple(specs)))
    except (NonPrime, BadSpec) as exc:
        raise ParseError(f"invalid ring spec: {exc}") from exc


def _parse_element(ring: Ring, obj, what: str):
    try:
        return ring.element_from_json(obj)
    except ShapeMismatch as exc:
        raise ParseError(f"{what}: {exc}") from exc


def _parse_state(ring: Ring, obj, expect_freq, expect_shift, what: str) -> SparseState:
    _require(isinstance(obj, dict), f"{what} must be an object")
    d = ring.d
    freq = _parse_element(ring, obj.get("xi"), f"{what}.xi")
    shift = _parse_element(ring, obj.get("eta"), f"{what}.eta")
    _require(
        freq == expect_freq and shift == expect_shift,
        f"{what} is out of enumeration order",
    )
    raw = obj.get("entries")
    _require(isinstance(raw, list), f"{what}.entries must be a list")
    _require(len(raw) == d, f"{what} must carry exactly {d} entries")
    entries = []
    last_flat = -1
    for item in raw:
        _require(
            isinstance(item, list) and len(item) == 3,
            f"{what} entries must be [flat, num, den] triples",
        )
        flat = _as_int(item[0], f"{what} entry index")
        num = _as_int(item[1], f"{what} phase numerator")
        den = _as_int(item[2], f"{what} phase denominator")
        _require(0 <= flat < d * d, f"{what} entry index {flat} out of range")
        _require(flat > last_flat, f"{what} entries must be sorted by index, no repeats")
        _require(den >= 1, f"{what} phase denominator must be positive")
        last_flat = flat
        entries.append((flat, phase(num, den)))
    return SparseState(dim=d, freq=freq, shift=shift, entries=tuple(entries))


def parse_family(text: str) -> Family:
    """Parse and structurally validate a family file.

    Phase pairs are normalized into reduced form mod 1 on the way in, so
    a file whose phases were tampered with still parses and is left for
    verification to reject; genuinely malformed structure raises
    ParseError.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    _require(isinstance(obj, dict), "top level must be an object")
    version = obj.get("format_version")
    _require(version == FORMAT_VERSION, f"unsupported format_version {version!r}")
    ring = _parse_ring(obj.get("ring"))
    d = _as_int(obj.get("d"), "d")
    _require(d == ring.d, f"d={d} does not match the ring size {ring.d}")

    raw_set = obj.get("set")
    _require(isinstance(raw_set, list), "set must be a list")
    units = tuple(
        _parse_element(ring, item, f"set[{k}]") for k, item in enumerate(raw_set)
    )

    raw_bases = obj.get("bases")
    _require(isinstance(raw_bases, list), "bases must be a list")
    _require(len(raw_bases) == len(units), "bases and set must have the same length")
    els = ring.elements
    bases = []
    for k, raw_basis in enumerate(raw_bases):
        _require(isinstance(raw_basis, dict), f"bases[{k}] must be an object")
        unit = _parse_element(ring, raw_basis.get("b"), f"bases[{k}].b")
        _require(unit == units[k], f"bases[{k}].b does not match set[{k}]")
        raw_states = raw_basis.get("states")
        _require(isinstance(raw_states, list), f"bases[{k}].states must be a list")
        _require(
            len(raw_states) == d * d, f"bases[{k}] must carry exactly {d * d} states"
        )
        states = tuple(
            _parse_state(
                ring,
                raw_state,
                els[idx // d],
                els[idx % d],
                f"bases[{k}].states[{idx}]",
            )
            for idx, raw_state in enumerate(raw_states)
        )
        bases.append(MEBasis(dim=d, unit=unit, states=states))
    return Family(ring=ring, units=units, bases=tuple(bases))


def load_family(path: str) -> Family:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_family(text)


def report_to_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"
