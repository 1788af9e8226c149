"""Finite-dimensional quantum statistical mechanics.

Everything is computed in the eigenbasis of the Hermitian input (exact
for these sizes), with min-eigenvalue shifts guarding the exponentials.
Covers partition functions, Gibbs expectations, the generating
functional W(f) = -log tr e^{-f}, the Kubo inner product, the
Gibbs-Bogoliubov gap, limit resolution, and the black-body formula
suite (spectral density, displacement root, radiation constant).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError
from .matrixcore import DEFAULT_TOL, as_square, eig_hermitian, is_hermitian

__all__ = [
    "PhysicalConstants",
    "SI_CONSTANTS",
    "NATURAL_CONSTANTS",
    "GibbsState",
    "partition_function",
    "gibbs_value",
    "schottky_capacity",
    "generating_functional",
    "kubo_inner",
    "gibbs_bogoliubov_gap",
    "limit_resolution",
    "entropy_value",
    "planck_density",
    "wien_displacement_x",
    "stefan_constant",
    "entropy_of_mixing",
    "ideal_gas_pressure",
]

_EXP_GUARD = 700.0  # exp overflow threshold for float64


@dataclass(frozen=True)
class PhysicalConstants:
    """Boltzmann constant (J/K), hbar (J s), speed of light (m/s)."""

    kbar: float = 1.38065e-23
    hbar: float = 1.0545718e-34
    c: float = 2.99792458e8

    def __post_init__(self):
        if min(self.kbar, self.hbar, self.c) <= 0:
            raise DomainError("bad_constants", "all constants must be positive")


SI_CONSTANTS = PhysicalConstants()
NATURAL_CONSTANTS = PhysicalConstants(kbar=1.0, hbar=1.0, c=1.0)

AVOGADRO = 6.02214e23


def _hermitian_eigs(h, what: str):
    h = as_square(h, what)
    if not is_hermitian(h, DEFAULT_TOL):
        raise DomainError("not_hermitian", f"{what} must be Hermitian")
    return eig_hermitian(h)


def partition_function(h, beta: float) -> float:
    """Z = tr e^{-beta H} = sum_n e^{-beta E_n}, min-shifted for stability."""
    if beta <= 0:
        raise DomainError("bad_beta", "beta must be positive")
    w, _ = _hermitian_eigs(h, "H")
    shifted = beta * (w - w[0])
    # deep tails merely underflow; only e^{-beta E_min} can overflow
    if -beta * w[0] > _EXP_GUARD:
        raise DomainError("range", "ground-state weight overflows")
    return float(np.sum(np.exp(-shifted)) * math.exp(-beta * w[0]))


class GibbsState:
    """Canonical state <g> = tr(e^{-beta H} g)/Z for Hermitian H."""

    def __init__(self, h, beta: float):
        if beta <= 0:
            raise DomainError("bad_beta", "beta must be positive")
        self.h = as_square(h, "H")
        self.beta = float(beta)
        self._w, self._v = _hermitian_eigs(self.h, "H")
        weights = np.exp(-self.beta * (self._w - self._w[0]))
        self._probs = weights / np.sum(weights)

    @cached_property
    def rho(self) -> np.ndarray:
        return self._v @ np.diag(self._probs) @ self._v.conj().T

    def value(self, g) -> complex:
        g = as_square(g, "g")
        if g.shape != self.h.shape:
            raise DomainError("shape", "observable has wrong dimension")
        gt = self._v.conj().T @ g @ self._v
        return complex(np.sum(self._probs * np.diag(gt)))


def gibbs_value(state: GibbsState, g) -> complex:
    """tr(rho g); real inputs give values real up to roundoff."""
    return state.value(g)


def entropy_value(state: GibbsState, kbar: float = 1.0) -> float:
    """<S> = kbar (beta <H> + log Z), nonnegative at finite level count."""
    mean_h = state.value(state.h).real
    w = state._w
    log_z = -state.beta * w[0] + math.log(np.sum(np.exp(-state.beta * (w - w[0]))))
    return kbar * (state.beta * mean_h + log_z)


def schottky_capacity(e_gap: float, temperature: float,
                      consts: PhysicalConstants = NATURAL_CONSTANTS) -> float:
    """Two-level heat capacity C = (E^2/kbar T^2) e^x / (e^x+1)^2, x = E/kbar T."""
    if temperature <= 0:
        raise DomainError("bad_temperature", "T must be positive")
    x = e_gap / (consts.kbar * temperature)
    # e^x/(e^x+1)^2 = (2 cosh(x/2))^{-2}, computed via decaying exponentials
    t = math.exp(-abs(x) / 2.0)
    sech_half = t / (1.0 + t * t)
    return (e_gap**2 / (consts.kbar * temperature**2)) * sech_half**2


def generating_functional(f) -> float:
    """W(f) = -log tr e^{-f} for Hermitian f, evaluated in log space."""
    w, _ = _hermitian_eigs(f, "f")
    return float(w[0] - math.log(np.sum(np.exp(-(w - w[0])))))


def _phi_grid(x: np.ndarray) -> np.ndarray:
    """(e^x - 1)/x elementwise, with a 6-term series below 1e-4."""
    small = np.abs(x) < 1e-4
    series = 1.0 + x * (1 / 2 + x * (1 / 6 + x * (1 / 24 + x * (1 / 120 + x / 720))))
    safe = np.where(small, 1.0, x)
    return np.where(small, series, np.expm1(safe) / safe)


def kubo_inner(f, g, h) -> complex:
    """Kubo product <g; h>_f = <g E_f h>_f with E_f h = int_0^1 e^{-sf} h e^{sf} ds.

    In the eigenbasis of f the smoothing kernel is entrywise:
    (E_f h)_{mn} = h_{mn} phi(lambda_n - lambda_m).
    """
    f = as_square(f, "f")
    g = as_square(g, "g")
    h = as_square(h, "h")
    if g.shape != f.shape or h.shape != f.shape:
        raise DomainError("shape", "operands must match f in dimension")
    w, v = _hermitian_eigs(f, "f")
    gt = v.conj().T @ g @ v
    ht = v.conj().T @ h @ v
    diffs = w[np.newaxis, :] - w[:, np.newaxis]  # lambda_n - lambda_m
    eh = ht * _phi_grid(diffs)
    probs = np.exp(-(w - w[0]))
    probs /= np.sum(probs)
    return complex(np.sum(probs * np.diag(gt @ eh)))


def gibbs_bogoliubov_gap(f, g) -> float:
    """W(f) + <g - f>_f - W(g); nonnegative, zero iff g - f is constant."""
    f = as_square(f, "f")
    g = as_square(g, "g")
    if f.shape != g.shape:
        raise DomainError("shape", "f and g must have equal dimension")
    state = GibbsState(f, 1.0)
    return generating_functional(f) + state.value(g - f).real - generating_functional(g)


def limit_resolution(state: GibbsState, g) -> float:
    """res(g) = sqrt(<g^2>/<g>^2 - 1); rejects vanishing mean."""
    g = as_square(g, "g")
    if not is_hermitian(g, DEFAULT_TOL):
        raise DomainError("not_hermitian", "limit resolution needs Hermitian g")
    mean = state.value(g).real
    if abs(mean) <= 1e-12:
        raise DomainError("zero_mean", "resolution undefined for <g> = 0")
    second = state.value(g @ g).real
    return math.sqrt(max(second / mean**2 - 1.0, 0.0))


# ---------------------------------------------------------------------------
# black-body formulas


def planck_density(omega: float, temperature: float, volume: float,
                   consts: PhysicalConstants = SI_CONSTANTS) -> float:
    """Spectral energy density f(w) = (V hbar / pi^2 c^3) w^3 / (e^{hbar w beta} - 1)."""
    if omega <= 0 or temperature <= 0:
        raise DomainError("bad_argument", "omega and T must be positive")
    beta = 1.0 / (consts.kbar * temperature)
    x = consts.hbar * omega * beta
    if x > _EXP_GUARD:
        return 0.0
    return (volume * consts.hbar / (math.pi**2 * consts.c**3)) * omega**3 / math.expm1(x)


def wien_displacement_x() -> float:
    """Positive root of 3 - x = 3 e^{-x} by Newton iteration from x0 = 3."""
    x = 3.0
    for _ in range(60):
        fx = 3.0 - x - 3.0 * math.exp(-x)
        if abs(fx) <= 1e-15:
            break
        dfx = -1.0 + 3.0 * math.exp(-x)
        x -= fx / dfx
    return x


def stefan_constant(consts: PhysicalConstants = SI_CONSTANTS) -> float:
    """sigma = pi^2 kbar^4 / (60 hbar^3 c^2) in J s^-1 m^-2 K^-4."""
    return math.pi**2 * consts.kbar**4 / (60.0 * consts.hbar**3 * consts.c**2)


def entropy_of_mixing(fractions, n_moles: float,
                      consts: PhysicalConstants = NATURAL_CONSTANTS) -> float:
    """kbar N_c sum x_j log x_j (nonpositive; its negation is the mixing gain)."""
    x = np.asarray(fractions, dtype=float)
    if x.ndim != 1 or np.any(x <= 0) or abs(float(np.sum(x)) - 1.0) > 1e-12:
        raise DomainError("bad_fractions", "need positive fractions summing to 1")
    return float(consts.kbar * n_moles * np.sum(x * np.log(x)))


def ideal_gas_pressure(temperature: float, volume: float,
                       consts: PhysicalConstants = SI_CONSTANTS) -> float:
    """One-mole ideal gas law P = R T / V with R = kbar * Avogadro."""
    if temperature <= 0 or volume <= 0:
        raise DomainError("bad_argument", "T and V must be positive")
    return consts.kbar * AVOGADRO * temperature / volume
