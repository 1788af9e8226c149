"""Dense complex matrix arithmetic and numerical predicates.

Matrices are plain ``numpy.ndarray`` objects of shape (n, n); every
routine treats its inputs as immutable and returns fresh arrays.  The
matrix exponential is computed by scaling-and-squaring applied to the
truncated power series, and the Hermitian eigensolver runs cyclic
Jacobi sweeps; both are self-contained so that their output can be
checked directly against the defining formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "as_square",
    "commutator",
    "anticommutator",
    "expm",
    "is_hermitian",
    "is_antihermitian",
    "is_unitary",
    "is_special_orthogonal",
    "eig_hermitian",
]


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative tolerance pair for numerical predicates."""

    abs_eps: float = 1e-10
    rel_eps: float = 1e-10

    def __post_init__(self):
        if self.abs_eps < 0 or self.rel_eps < 0:
            raise DomainError("bad_tolerance", "tolerances must be nonnegative")
        if self.abs_eps == 0 and self.rel_eps == 0:
            raise DomainError("bad_tolerance", "abs_eps and rel_eps cannot both vanish")

    def bound(self, scale: float = 1.0) -> float:
        """Largest deviation accepted at the given reference scale."""
        return self.abs_eps + self.rel_eps * abs(scale)


DEFAULT_TOL = Tolerance()


def as_square(a, name: str = "matrix") -> np.ndarray:
    """Validate and return ``a`` as a square complex ndarray."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DomainError("shape", f"{name} must be square, got shape {m.shape}")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise DomainError("not_finite", f"{name} contains NaN/Inf entries")
    return m


def _same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DomainError("shape", f"dimension mismatch {a.shape} vs {b.shape}")


def commutator(a, b) -> np.ndarray:
    """Commutator ``ab - ba`` of two square matrices of equal size."""
    a = as_square(a, "a")
    b = as_square(b, "b")
    _same_shape(a, b)
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    """Anticommutator ``ab + ba``."""
    a = as_square(a, "a")
    b = as_square(b, "b")
    _same_shape(a, b)
    return a @ b + b @ a


def expm(a) -> np.ndarray:
    """Matrix exponential via scaling-and-squaring of the power series.

    The argument is halved until its Frobenius norm is at most 0.5, the
    series sum_k a^k/k! is summed to machine precision, and the result is
    squared back up.  Relative accuracy is better than 1e-12 for
    ``norm(a) <= 20``.
    """
    a = as_square(a)
    n = a.shape[0]
    norm = np.linalg.norm(a)
    if norm == 0.0:
        return np.eye(n, dtype=complex)
    squarings = max(0, int(np.ceil(np.log2(norm / 0.5))))
    b = a / (2.0**squarings)
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, 60):
        term = term @ b / k
        result = result + term
        if np.linalg.norm(term) <= 1e-18 * np.linalg.norm(result):
            break
    for _ in range(squarings):
        result = result @ result
    return result


def is_hermitian(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ``a`` equals its conjugate transpose entrywise within tol."""
    a = as_square(a)
    scale = max(1.0, float(np.max(np.abs(a))))
    return bool(np.max(np.abs(a - a.conj().T)) <= tol.bound(scale))


def is_antihermitian(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ``a + a*`` vanishes entrywise within tol."""
    a = as_square(a)
    scale = max(1.0, float(np.max(np.abs(a))))
    return bool(np.max(np.abs(a + a.conj().T)) <= tol.bound(scale))


def is_unitary(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ``a* a = 1`` entrywise within tol."""
    a = as_square(a)
    defect = a.conj().T @ a - np.eye(a.shape[0])
    return bool(np.max(np.abs(defect)) <= tol.bound(1.0))


def is_special_orthogonal(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ``a`` is real with ``a^T a = 1`` and ``det a = 1`` within tol."""
    a = as_square(a)
    if np.max(np.abs(a.imag)) > tol.bound(1.0):
        return False
    r = a.real
    defect = r.T @ r - np.eye(r.shape[0])
    if np.max(np.abs(defect)) > tol.bound(1.0):
        return False
    return bool(abs(np.linalg.det(r) - 1.0) <= tol.bound(1.0))


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def eig_hermitian(a, tol: Tolerance = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Parameters
    ----------
    a : array_like
        Hermitian matrix (checked entrywise within ``tol``).

    Returns
    -------
    (eigenvalues, eigenvectors)
        Eigenvalues ascending as a real 1-d array; eigenvectors as the
        columns of a unitary matrix, so that ``a @ V = V @ diag(w)``.
        Within a degenerate cluster the column ordering is unspecified.
    """
    a = as_square(a)
    if not is_hermitian(a, tol):
        raise DomainError("not_hermitian", "eig_hermitian requires a Hermitian matrix")
    n = a.shape[0]
    m = 0.5 * (a + a.conj().T)  # exact Hermitian part kills roundoff asymmetry
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(m)
    if scale == 0.0 or n == 1:
        w = np.diag(m).real.copy()
        order = np.argsort(w, kind="stable")
        return w[order], v[:, order]
    target = 1e-13 * scale
    for _ in range(60):
        if _offdiag_norm(m) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                absg = abs(apq)
                if absg <= 1e-3 * target / n:
                    continue
                phase = apq / absg
                app = m[p, p].real
                aqq = m[q, q].real
                tau = (app - aqq) / (2.0 * absg)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # unitary block [[c, -s], [s/phase, c/phase]] on columns (p, q)
                col_p = c * m[:, p] + (s * np.conj(phase)) * m[:, q]
                col_q = -s * m[:, p] + (c * np.conj(phase)) * m[:, q]
                m[:, p] = col_p
                m[:, q] = col_q
                row_p = c * m[p, :] + (s * phase) * m[q, :]
                row_q = -s * m[p, :] + (c * phase) * m[q, :]
                m[p, :] = row_p
                m[q, :] = row_q
                m[p, q] = 0.0
                m[q, p] = 0.0
                m[p, p] = m[p, p].real
                m[q, q] = m[q, q].real
                vcol_p = c * v[:, p] + (s * np.conj(phase)) * v[:, q]
                vcol_q = -s * v[:, p] + (c * np.conj(phase)) * v[:, q]
                v[:, p] = vcol_p
                v[:, q] = vcol_q
    w = np.diag(m).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
