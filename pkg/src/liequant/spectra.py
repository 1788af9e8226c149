"""Spectroscopy toolkit: difference spectra, hydrogen-like line lists,
resonance response, and the alternating least-squares line assignment.

The assignment solver minimizes

    S(E, j, k) = sum_l q_l ((E_j(l) - E_k(l)) / (hbar w_l) - 1)^2

by alternating per-line assignment (best transition per line, ties to the
smallest indices) with a gauge-fixed linear least-squares refit of the
levels (E_1 = 0).  The objective is non-increasing at every half-step.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "EnergyLevels",
    "SpectrumDataset",
    "AssignmentSolution",
    "difference_spectrum",
    "rydberg_lines",
    "RYDBERG_CONSTANT",
    "lorentz_response",
    "assign_lines",
    "assign_lines_multistart",
    "objective",
]

RYDBERG_CONSTANT = 1.1e7  # 1/m


@dataclass(frozen=True)
class EnergyLevels:
    """Ascending energy list with a unit tag; near-duplicates are merged."""

    values: np.ndarray
    unit: str = "J"

    def __init__(self, values, unit: str = "J"):
        vals = np.sort(np.asarray(values, dtype=float))
        if vals.ndim != 1 or vals.size == 0:
            raise DomainError("shape", "need a nonempty 1-d level list")
        span = float(vals[-1] - vals[0])
        merged = [vals[0]]
        for v in vals[1:]:
            if v - merged[-1] > 1e-12 * max(span, 1e-300):
                merged.append(v)
        object.__setattr__(self, "values", np.array(merged))
        object.__setattr__(self, "unit", unit)

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class SpectrumDataset:
    """Observed angular frequencies with positive weights."""

    omegas: np.ndarray
    weights: np.ndarray

    def __init__(self, omegas, weights=None):
        om = np.asarray(omegas, dtype=float)
        wt = np.ones_like(om) if weights is None else np.asarray(weights, dtype=float)
        if om.ndim != 1 or om.shape != wt.shape:
            raise DomainError("shape", "omegas and weights must be equal-length vectors")
        if np.any(om <= 0) or np.any(wt <= 0):
            raise DomainError("bad_lines", "frequencies and weights must be positive")
        object.__setattr__(self, "omegas", om)
        object.__setattr__(self, "weights", wt)

    def __len__(self) -> int:
        return self.omegas.size


@dataclass(frozen=True)
class AssignmentSolution:
    levels: np.ndarray
    upper: np.ndarray        # j(l), 1-based level indices
    lower: np.ndarray        # k(l)
    objective: float
    stopped_on: str          # "converged" or "max_iters"
    flags: tuple = field(default_factory=tuple)


def difference_spectrum(levels: EnergyLevels, hbar: float = 1.0) -> np.ndarray:
    """All positive transition frequencies (E_j - E_k)/hbar, ascending."""
    if len(levels) < 2:
        raise DomainError("too_few", "need at least two levels")
    e = levels.values
    diffs = [(e[j] - e[k]) / hbar for j in range(len(e)) for k in range(j)]
    return np.sort(np.array(diffs))


def rydberg_lines(k_max: int, r_h: float = RYDBERG_CONSTANT):
    """Hydrogen-like wavenumbers R_H (1/k^2 - 1/l^2) for k < l <= k_max.

    Returns a list of (k, l, value) triples; values carry the unit of
    ``r_h`` (1/m by default).
    """
    if k_max < 2:
        raise DomainError("too_few", "k_max must be at least 2")
    out = []
    for k in range(1, k_max):
        for l in range(k + 1, k_max + 1):
            out.append((k, l, r_h * (1.0 / k**2 - 1.0 / l**2)))
    return out


def lorentz_response(force: complex, omega: float, m: float, c: float, k: float) -> float:
    """Driven-oscillator energy |F|^2 / ((k - m w^2)^2 + (c w)^2)."""
    denom = (k - m * omega**2) ** 2 + (c * omega) ** 2
    if denom == 0.0:
        raise DomainError("undamped_resonance", "response diverges at resonance")
    return abs(force) ** 2 / denom


def objective(levels, upper, lower, data: SpectrumDataset, hbar: float) -> float:
    e = np.asarray(levels, dtype=float)
    ratio = (e[np.asarray(upper) - 1] - e[np.asarray(lower) - 1]) / (hbar * data.omegas)
    return float(np.sum(data.weights * (ratio - 1.0) ** 2))


def _best_assignment(e: np.ndarray, data: SpectrumDataset, hbar: float):
    """Per-line transition minimizing that line's term; ties to smallest j, then k."""
    n = e.size
    pairs = [(j, k) for j in range(1, n + 1) for k in range(1, n + 1)
             if e[j - 1] > e[k - 1]]
    if not pairs:
        raise DomainError("degenerate_levels", "no positive energy differences")
    gaps = np.array([e[j - 1] - e[k - 1] for j, k in pairs])
    upper = np.empty(len(data), dtype=int)
    lower = np.empty(len(data), dtype=int)
    for l in range(len(data)):
        terms = (gaps / (hbar * data.omegas[l]) - 1.0) ** 2
        best = np.argmin(terms)
        # enforce the documented tie-break among near-equal terms
        tied = np.where(terms <= terms[best] * (1 + 1e-12) + 1e-300)[0]
        j, k = min(pairs[i] for i in tied)
        upper[l] = j
        lower[l] = k
    return upper, lower


def _refit_levels(e_prev: np.ndarray, upper, lower, data: SpectrumDataset, hbar: float):
    """Weighted least squares over levels with the gauge E_1 = 0.

    Levels in connected components not tied to the gauge level keep their
    previous values; the returned flag reports that case.
    """
    n = e_prev.size
    # connected components of the transition graph
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for j, k in zip(upper, lower):
        a, b = find(j - 1), find(k - 1)
        if a != b:
            parent[a] = b
    anchored = {i for i in range(n) if find(i) == find(0)}
    free = sorted(anchored - {0})
    flags = ()
    if len(anchored) < n:
        flags = ("unidentifiable_levels",)
    if not free:
        return e_prev.copy(), flags
    col = {level: idx for idx, level in enumerate(free)}
    rows = []
    rhs = []
    for l, (j, k) in enumerate(zip(upper, lower)):
        ju, kl = j - 1, k - 1
        if ju not in anchored:  # whole line lives in a frozen component
            continue
        scale = np.sqrt(data.weights[l]) / (hbar * data.omegas[l])
        row = np.zeros(len(free))
        if ju != 0:
            row[col[ju]] += scale
        if kl != 0:
            row[col[kl]] -= scale
        rows.append(row)
        rhs.append(np.sqrt(data.weights[l]))
    a = np.vstack(rows)
    b = np.array(rhs)
    sol, _, rank, _ = np.linalg.lstsq(a, b, rcond=None)
    if rank < len(free):
        # rank-deficient inside the anchored component: keep previous values
        return e_prev.copy(), flags + ("unidentifiable_levels",)
    e_new = e_prev.copy()
    for level, idx in col.items():
        e_new[level] = sol[idx]
    e_new[0] = 0.0
    return e_new, flags


def assign_lines(data: SpectrumDataset, initial: EnergyLevels, hbar: float = 1.0,
                 max_iters: int = 100) -> AssignmentSolution:
    """Alternating assignment/refit minimization of the line objective.

    Stops when the assignment repeats or after ``max_iters`` rounds,
    whichever comes first; the solution records which criterion fired.
    """
    if len(initial) < 2:
        raise DomainError("too_few", "need at least two trial levels")
    if max_iters < 1:
        raise DomainError("bad_iters", "max_iters must be at least 1")
    e = initial.values - initial.values[0]  # adopt the gauge up front
    flags: tuple = ()
    upper = lower = None
    stopped = "max_iters"
    for _ in range(max_iters):
        new_upper, new_lower = _best_assignment(e, data, hbar)
        if upper is not None and np.array_equal(new_upper, upper) \
                and np.array_equal(new_lower, lower):
            stopped = "converged"
            break
        upper, lower = new_upper, new_lower
        e, step_flags = _refit_levels(e, upper, lower, data, hbar)
        flags = tuple(dict.fromkeys(flags + step_flags))
    if stopped == "max_iters":
        # close with an assignment pass so the result matches the final levels
        upper, lower = _best_assignment(e, data, hbar)
    return AssignmentSolution(
        levels=e,
        upper=upper,
        lower=lower,
        objective=objective(e, upper, lower, data, hbar),
        stopped_on=stopped,
        flags=flags,
    )


def assign_lines_multistart(data: SpectrumDataset, initial: EnergyLevels,
                            hbar: float = 1.0, max_iters: int = 100,
                            n_starts: int = 1, scale: float = 0.01,
                            rng=None) -> AssignmentSolution:
    """Best of ``n_starts`` solves; starts beyond the first perturb the
    trial levels by centered Gaussian noise of the given scale."""
    if n_starts < 1:
        raise DomainError("bad_iters", "need at least one start")
    if rng is None:
        rng = np.random.default_rng(0)
    best = assign_lines(data, initial, hbar=hbar, max_iters=max_iters)
    for _ in range(n_starts - 1):
        trial = EnergyLevels(initial.values + rng.normal(0.0, scale, len(initial)),
                             unit=initial.unit)
        sol = assign_lines(data, trial, hbar=hbar, max_iters=max_iters)
        if sol.objective < best.objective:
            best = sol
    return best
