"""su(2) irreducibles, tensor-product decomposition, spinor inner products.

Spins are stored as twice-spin integers internally so that half-integer
labels never touch floating point.  The coupling coefficients are found
numerically (eigenspaces of the quadratic invariant, then the diagonal
generator, then a lowering cascade), not from closed-form tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .matrixcore import commutator, eig_hermitian

__all__ = [
    "IrrepDj",
    "build_irrep",
    "casimir",
    "clebsch_gordan",
    "spinor_inner",
    "spinor_norm_constant",
    "spinor_metric",
    "decompose_restriction",
]


def _twice(j) -> int:
    """Validate a (half-)integer spin and return 2j as an int."""
    twoj = 2 * Fraction(j)
    if twoj.denominator != 1 or twoj < 0:
        raise DomainError("bad_spin", f"spin must be a nonnegative half-integer, got {j}")
    return int(twoj)


@dataclass(frozen=True)
class IrrepDj:
    """Spin-j irreducible: t3 diagonal (descending), ladder matrices."""

    twoj: int
    t3: np.ndarray
    lplus: np.ndarray
    lminus: np.ndarray

    @property
    def j(self) -> float:
        return self.twoj / 2.0

    @property
    def dim(self) -> int:
        return self.twoj + 1

    @property
    def t1(self) -> np.ndarray:
        return 0.5 * (self.lplus + self.lminus)

    @property
    def t2(self) -> np.ndarray:
        return (self.lplus - self.lminus) / 2j


def build_irrep(j) -> IrrepDj:
    """Spin-j matrices with t3 = diag(j, j-1, ..., -j) and L- = (L+)*."""
    twoj = _twice(j)
    dim = twoj + 1
    jj = twoj / 2.0
    t3 = np.diag([jj - i for i in range(dim)]).astype(complex)
    lplus = np.zeros((dim, dim), dtype=complex)
    for i in range(1, dim):
        m = jj - i  # raising from row i (eigenvalue m) to row i-1
        lplus[i - 1, i] = math.sqrt(jj * (jj + 1) - m * (m + 1))
    lminus = lplus.conj().T
    return IrrepDj(twoj, t3, lplus, lminus)


def casimir(rep: IrrepDj) -> np.ndarray:
    """J^2 = L+ L- - t3 + t3^2, equal to j(j+1) times the identity."""
    return rep.lplus @ rep.lminus - rep.t3 + rep.t3 @ rep.t3


def _tensor_generators(rk: IrrepDj, rl: IrrepDj):
    dk, dl = rk.dim, rl.dim
    eye_k, eye_l = np.eye(dk), np.eye(dl)
    t3 = np.kron(rk.t3, eye_l) + np.kron(eye_k, rl.t3)
    lp = np.kron(rk.lplus, eye_l) + np.kron(eye_k, rl.lplus)
    lm = np.kron(rk.lminus, eye_l) + np.kron(eye_k, rl.lminus)
    return t3, lp, lm


def _fix_phase(vec: np.ndarray) -> np.ndarray:
    """Rotate so the first component above noise is real positive."""
    for comp in vec:
        if abs(comp) > 1e-8:
            return vec * (abs(comp) / comp)
    return vec


def clebsch_gordan(k, l):
    """Decompose D_k (x) D_l into irreducibles.

    Returns ``(summands, isometry)`` where ``summands`` is a list of
    ``(j, multiplicity)`` with j = k+l, k+l-1, ..., |k-l| (multiplicity 1
    throughout), and ``isometry`` maps the direct sum, ordered by
    descending j and descending m inside each block, into the tensor
    product.  Phases follow a highest-vector-positive convention and a
    lowering cascade, so the isometry is deterministic.
    """
    twok, twol = _twice(k), _twice(l)
    rk, rl = build_irrep(Fraction(twok, 2)), build_irrep(Fraction(twol, 2))
    t3, lp, lm = _tensor_generators(rk, rl)
    jsq = lp @ lm - t3 + t3 @ t3
    dim = rk.dim * rl.dim
    w2, v2 = eig_hermitian(jsq)

    summands = []
    columns = []
    for twoj in range(twok + twol, abs(twok - twol) - 2, -2):
        jj = twoj / 2.0
        summands.append((jj, 1))
        sel = np.where(np.abs(w2 - jj * (jj + 1)) < 1e-6)[0]
        if sel.size != twoj + 1:
            raise DomainError("bad_multiplicity",
                              f"j={jj} eigenspace has size {sel.size}, want {twoj + 1}")
        block = v2[:, sel]
        # top state: eigenvector of t3 (restricted to the block) at m = j
        wt, vt = eig_hermitian(block.conj().T @ t3 @ block)
        top = np.where(np.abs(wt - jj) < 1e-6)[0]
        if top.size != 1:
            raise DomainError("degenerate_top", f"top state for j={jj} not isolated")
        vec = _fix_phase(block @ vt[:, top[0]])
        columns.append(vec)
        for _ in range(twoj):
            vec = lm @ vec
            norm = np.linalg.norm(vec)
            if norm < 1e-12:
                raise DomainError("cascade_collapse", f"lowering died inside j={jj}")
            vec = vec / norm
            columns.append(vec)
    iso = np.stack(columns, axis=1)
    if iso.shape != (dim, dim):
        raise DomainError("dimension_mismatch", "coupled basis has wrong size")
    return summands, iso


def spinor_inner(x, y, s) -> complex:
    """Coherent-spinor overlap (y* x)^{2s} on degree-2s polynomials.

    Evaluated both in closed form and through the monomial metric
    <pi_k|pi_l> = delta_kl / binom(2s, k); the two must agree, and the
    closed form is returned.
    """
    twos = _twice(s)
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.shape != (2,) or y.shape != (2,):
        raise DomainError("shape", "spinor arguments are 2-vectors")
    direct = complex((np.conj(y) @ x) ** twos)
    expanded = 0.0 + 0.0j
    for kk in range(twos + 1):
        pik_x = x[0] ** kk * x[1] ** (twos - kk)
        pik_y = y[0] ** kk * y[1] ** (twos - kk)
        expanded += math.comb(twos, kk) * pik_x * np.conj(pik_y)
    if abs(direct - expanded) > 1e-10 * max(1.0, abs(direct)):
        raise DomainError("inconsistent", "metric expansion disagrees with closed form")
    return direct


def spinor_norm_constant(s) -> float:
    """Normalization pi^2 / ((2s+1)(2s+2)) of the invariant disk measure."""
    twos = _twice(s)
    return math.pi**2 / ((twos + 1) * (twos + 2))


def spinor_metric(s) -> np.ndarray:
    """Diagonal monomial norms <pi_k|pi_k> = 1/binom(2s, k), k = 0..2s."""
    twos = _twice(s)
    return np.array([1.0 / math.comb(twos, k) for k in range(twos + 1)])


def _closure_check(mats, tol: float = 1e-8):
    basis = np.stack([m.ravel() for m in mats], axis=1)
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            com = commutator(mats[i], mats[j]).ravel()
            coef, _, _, _ = np.linalg.lstsq(basis, com, rcond=None)
            if np.max(np.abs(basis @ coef - com)) > tol:
                raise DomainError("not_subalgebra", "commutator leaves the span")


def decompose_restriction(sub_mats, tol: float = 1e-8):
    """Irreducible block sizes of a representation restricted to a subalgebra.

    ``sub_mats`` are the images of the subalgebra generators (they must
    close under the commutator).  Blocks are the eigenvalue clusters of
    the quadratic invariant sum_ij (T^-1)_ij S_i S_j built from the trace
    form T_ij = tr(S_i S_j); sizes are returned descending and sum to the
    ambient dimension.
    """
    mats = [np.asarray(m, dtype=complex) for m in sub_mats]
    if not mats:
        raise DomainError("not_subalgebra", "no generators given")
    _closure_check(mats, tol)
    r = len(mats)
    trace_form = np.array([[np.trace(mats[i] @ mats[j]) for j in range(r)] for i in range(r)])
    if abs(np.linalg.det(trace_form)) < 1e-12:
        raise DomainError("not_subalgebra", "degenerate trace form, no quadratic invariant")
    inv = np.linalg.inv(trace_form)
    dim = mats[0].shape[0]
    cas = np.zeros((dim, dim), dtype=complex)
    for i in range(r):
        for j in range(r):
            cas += inv[i, j] * (mats[i] @ mats[j])
    for m in mats:
        if np.max(np.abs(commutator(cas, m))) > 1e-8:
            raise DomainError("not_subalgebra", "invariant fails to commute")
    w, _ = eig_hermitian(0.5 * (cas + cas.conj().T))
    blocks = []
    cluster = 1
    for i in range(1, dim):
        if abs(w[i] - w[i - 1]) < 1e-6 * max(1.0, abs(w[i])):
            cluster += 1
        else:
            blocks.append(cluster)
            cluster = 1
    blocks.append(cluster)
    return sorted(blocks, reverse=True)
