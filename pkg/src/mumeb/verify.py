"""Certification of bases and families.

Two independent routes:

* numeric brute force on dense vectors (numpy): orthonormality of each
  basis, maximal entanglement of each state, and cross inner-product
  moduli between bases;
* an exact rational criterion for pairs of scale units: the cross
  character sum collapses to a single unit-modulus term precisely when
  the ratio of the two units differs from 1 by a unit, so unbiasedness
  is decided without floating point.

Reports carry per-check verdicts, worst deviations, and the labels of
the offending states so any failure is reproducible from the report.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import isqrt

import numpy as np

from .errors import DimensionMismatch, NotAUnit
from .ring import Ring
from .weyl import Family, MEBasis, SparseState


def _label(x) -> list:
    return [list(u) if isinstance(u, tuple) else u for u in x]


def _state_label(state: SparseState) -> dict:
    return {"xi": _label(state.freq), "eta": _label(state.shift)}


def to_dense(state: SparseState) -> np.ndarray:
    """Evaluate phases into a unit-norm complex vector of length d^2."""
    d = state.dim
    vec = np.zeros(d * d, dtype=np.complex128)
    idx = [flat for flat, _ in state.entries]
    ph = [float(p) for _, p in state.entries]
    vec[idx] = np.exp(2j * np.pi * np.asarray(ph)) / np.sqrt(d)
    return vec


def dense_basis(basis: MEBasis) -> np.ndarray:
    """Stack the basis states into an (d^2, d^2) matrix, one state per row."""
    d = basis.dim
    n = d * d
    mat = np.zeros((n, n), dtype=np.complex128)
    scale = 1.0 / np.sqrt(d)
    for k, state in enumerate(basis.states):
        idx = [flat for flat, _ in state.entries]
        ph = [float(p) for _, p in state.entries]
        mat[k, idx] = np.exp(2j * np.pi * np.asarray(ph)) * scale
    return mat


def inner_product(u: np.ndarray, v: np.ndarray) -> complex:
    """Hermitian inner product, conjugate-linear in the first argument."""
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape:
        raise DimensionMismatch(f"shapes {u.shape} and {v.shape} differ")
    return complex(np.vdot(u, v))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    deviation: float | None = None
    witness: dict | None = None
    detail: str | None = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.deviation is not None:
            out["deviation"] = self.deviation
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    tolerance: float
    mode: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def worst_deviation(self) -> float:
        devs = [c.deviation for c in self.checks if c.deviation is not None]
        return max(devs) if devs else 0.0

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "overall": self.overall,
            "mode": self.mode,
            "tolerance": self.tolerance,
            "worst_deviation": self.worst_deviation,
            "notes": self.notes,
            "checks": [c.to_dict() for c in self.checks],
        }


def _as_matrix(obj) -> tuple[np.ndarray, MEBasis | None, int]:
    if isinstance(obj, MEBasis):
        return dense_basis(obj), obj, obj.dim
    mat = np.asarray(obj, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatch(f"expected a square state matrix, got shape {mat.shape}")
    d = isqrt(mat.shape[0])
    if d * d != mat.shape[0]:
        raise DimensionMismatch(f"matrix side {mat.shape[0]} is not a square d^2")
    return mat, None, d


def check_orthonormal(basis, tol: float = 1e-9) -> Report:
    """All pairwise inner products within a basis match the identity."""
    mat, src, d = _as_matrix(basis)
    gram = mat.conj() @ mat.T
    dev = np.abs(gram - np.eye(mat.shape[0]))
    worst = float(dev.max())
    i, j = np.unravel_index(int(dev.argmax()), dev.shape)
    witness = {"state_a": int(i), "state_b": int(j)}
    if src is not None:
        witness = {"state_a": _state_label(src.states[i]), "state_b": _state_label(src.states[j])}
    report = Report(tolerance=tol, mode="numeric")
    report.checks.append(
        Check("orthonormal", worst <= tol, deviation=worst, witness=witness)
    )
    return report


def _entangled_deviations(mat: np.ndarray, d: int) -> np.ndarray:
    coeff = mat.reshape(mat.shape[0], d, d)
    gram = coeff @ coeff.conj().transpose(0, 2, 1)
    eye = np.eye(d) / d
    return np.abs(gram - eye).max(axis=(1, 2))


def check_max_entangled(state, tol: float = 1e-9) -> Report:
    """The d x d coefficient matrix M of the state satisfies M M^dag = I/d."""
    if isinstance(state, SparseState):
        vec = to_dense(state)
        witness = _state_label(state)
    else:
        vec = np.asarray(state, dtype=np.complex128)
        d = isqrt(vec.shape[0])
        if d * d != vec.shape[0]:
            raise DimensionMismatch(f"vector length {vec.shape[0]} is not a square d^2")
        witness = None
    d = isqrt(vec.shape[0])
    worst = float(_entangled_deviations(vec.reshape(1, -1), d)[0])
    report = Report(tolerance=tol, mode="numeric")
    report.checks.append(
        Check("max_entangled", worst <= tol, deviation=worst, witness=witness)
    )
    return report


def check_pair_unbiased(basis_a, basis_b, tol: float = 1e-9) -> Report:
    """All d^4 cross inner products between two bases have modulus 1/d."""
    mat_a, src_a, da = _as_matrix(basis_a)
    mat_b, src_b, db = _as_matrix(basis_b)
    if da != db:
        raise DimensionMismatch(f"dimensions {da} and {db} differ")
    gram = mat_a.conj() @ mat_b.T
    dev = np.abs(np.abs(gram) - 1.0 / da)
    worst = float(dev.max())
    i, j = np.unravel_index(int(dev.argmax()), dev.shape)
    witness = {
        "state_a": _state_label(src_a.states[i]) if src_a is not None else int(i),
        "state_b": _state_label(src_b.states[j]) if src_b is not None else int(j),
    }
    report = Report(tolerance=tol, mode="numeric")
    report.checks.append(
        Check("pair_unbiased", worst <= tol, deviation=worst, witness=witness)
    )
    return report


@dataclass(frozen=True)
class ExactPairResult:
    """Outcome of the exact collapse criterion for two scale units.

    With ratio = a^-1 b, the cross character sums each collapse to a
    single term of modulus one exactly when ratio - 1 is a unit; the
    witness is its inverse.  Otherwise blocking holds the non-unit
    ratio - 1 and the bases cannot be unbiased.
    """

    unbiased: bool
    ratio: tuple
    witness: tuple | None
    blocking: tuple | None

    def __bool__(self) -> bool:
        return self.unbiased


def exact_pair_criterion(ring: Ring, a, b) -> ExactPairResult:
    if not ring.is_unit(a):
        raise NotAUnit(f"{ring.format_element(a)} is not a unit")
    if not ring.is_unit(b):
        raise NotAUnit(f"{ring.format_element(b)} is not a unit")
    ratio = ring.mul(ring.invert(a), b)
    shifted = ring.sub(ratio, ring.one)
    if ring.is_unit(shifted):
        return ExactPairResult(True, ratio, ring.invert(shifted), None)
    return ExactPairResult(False, ratio, None, shifted)


def _default_threads() -> int:
    env = os.environ.get("MUMEB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _sample_pairs(pairs: list, max_pairs: int) -> list:
    if max_pairs <= 0 or len(pairs) <= max_pairs:
        return pairs
    if max_pairs == 1:
        return [pairs[0]]
    step = (len(pairs) - 1) / (max_pairs - 1)
    idx = sorted({round(k * step) for k in range(max_pairs)})
    return [pairs[i] for i in idx]


def verify_family(
    family: Family,
    tol: float = 1e-9,
    mode: str = "both",
    max_pairs: int | None = None,
    threads: int | None = None,
) -> Report:
    """Run the requested certification mode over a whole family.

    Exact mode certifies the generic character and the collapse criterion
    for every pair of set units.  Numeric mode brute-forces orthonormality,
    maximal entanglement, and cross moduli.  Both further demands that the
    two verdicts agree pair by pair.  max_pairs limits the quadratic cross
    sweep to a deterministic evenly spaced sample (noted in the report).
    """
    if mode not in ("exact", "numeric", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    ring = family.ring
    m = len(family.bases)
    report = Report(tolerance=tol, mode=mode)
    all_pairs = list(combinations(range(m), 2))

    exact_verdicts: dict[tuple[int, int], bool] = {}
    if mode in ("exact", "both"):
        report.checks.append(Check("generic_character", ring.is_generic))
        for i, j in all_pairs:
            try:
                res = exact_pair_criterion(ring, family.units[i], family.units[j])
            except NotAUnit as exc:
                res = None
                report.checks.append(
                    Check(f"exact_unbiased[{i},{j}]", False, detail=str(exc))
                )
                exact_verdicts[(i, j)] = False
                continue
            witness = (
                {"collapse_inverse": _label(res.witness)}
                if res.unbiased
                else {"non_unit_ratio_shift": _label(res.blocking)}
            )
            report.checks.append(
                Check(f"exact_unbiased[{i},{j}]", res.unbiased, witness=witness)
            )
            exact_verdicts[(i, j)] = res.unbiased

    numeric_verdicts: dict[tuple[int, int], bool] = {}
    if mode in ("numeric", "both"):
        workers = threads if threads is not None else _default_threads()
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            dense = list(pool.map(dense_basis, family.bases))

            def basis_checks(k: int) -> list[Check]:
                mat = dense[k]
                basis = family.bases[k]
                d = basis.dim
                gram = mat.conj() @ mat.T
                dev = np.abs(gram - np.eye(mat.shape[0]))
                worst = float(dev.max())
                i, j = np.unravel_index(int(dev.argmax()), dev.shape)
                ortho = Check(
                    f"orthonormal[{k}]",
                    worst <= tol,
                    deviation=worst,
                    witness={
                        "basis": k,
                        "state_a": _state_label(basis.states[i]),
                        "state_b": _state_label(basis.states[j]),
                    },
                )
                ent_devs = _entangled_deviations(mat, d)
                worst_state = int(ent_devs.argmax())
                ent = Check(
                    f"max_entangled[{k}]",
                    float(ent_devs.max()) <= tol,
                    deviation=float(ent_devs.max()),
                    witness={"basis": k, "state": _state_label(basis.states[worst_state])},
                )
                return [ortho, ent]

            def pair_check(pair: tuple[int, int]) -> Check:
                i, j = pair
                d = family.bases[i].dim
                gram = dense[i].conj() @ dense[j].T
                dev = np.abs(np.abs(gram) - 1.0 / d)
                worst = float(dev.max())
                a, b = np.unravel_index(int(dev.argmax()), dev.shape)
                return Check(
                    f"unbiased[{i},{j}]",
                    worst <= tol,
                    deviation=worst,
                    witness={
                        "bases": [i, j],
                        "state_a": _state_label(family.bases[i].states[a]),
                        "state_b": _state_label(family.bases[j].states[b]),
                    },
                )

            per_basis = list(pool.map(basis_checks, range(m)))
            checked_pairs = all_pairs
            if max_pairs is not None and len(all_pairs) > max_pairs:
                checked_pairs = _sample_pairs(all_pairs, max_pairs)
                report.notes.append(
                    f"cross sweep sampled {len(checked_pairs)} of {len(all_pairs)} "
                    "basis pairs (deterministic, evenly spaced)"
                )
            pair_results = list(pool.map(pair_check, checked_pairs))

        for checks in per_basis:
            report.checks.extend(checks)
        for pair, check in zip(checked_pairs, pair_results):
            report.checks.append(check)
            numeric_verdicts[pair] = check.passed

    if mode == "both":
        mismatches = [
            pair
            for pair in numeric_verdicts
            if pair in exact_verdicts and exact_verdicts[pair] != numeric_verdicts[pair]
        ]
        witness = {"pair": list(mismatches[0])} if mismatches else None
        report.checks.append(Check("oracle_agreement", not mismatches, witness=witness))

    return report
