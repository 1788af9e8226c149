"""Computable core of classical and quantum mechanics via Lie algebras.

Submodules
----------
matrixcore : dense complex matrices, exponential, Hermitian eigensolver
liealg     : structure constants, builtin algebras, Killing form, Weyl relation
rotations  : SO(3)/SU(2), Rodrigues formula, Euler angles, covering map
poisson    : canonical and rotational brackets, free rigid body
fock       : bosonic ladder operators, coherent states, highest-weight ladders
fermion    : fermionic Fock space with parity signs
su2reps    : spin-j irreducibles, tensor decomposition, spinor overlaps
thermal    : Gibbs states, generating functional, Kubo product, black body
spectra    : difference spectra, line lists, assignment solver
cli        : command-line front end (``liequant`` entry point)
"""

from . import (  # noqa: F401
    fermion,
    fock,
    liealg,
    matrixcore,
    poisson,
    rotations,
    spectra,
    su2reps,
    thermal,
)
from .errors import DomainError  # noqa: F401

__version__ = "0.1.0"
