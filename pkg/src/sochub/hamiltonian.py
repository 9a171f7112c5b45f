"""Hamiltonian builders.

The single-particle matrix is 2N x 2N in spin-orbital indexing p = 2*site +
spin: off-diagonal 2x2 blocks are t_ij times the link's spin rotation (plus
the Hermitian conjugate on the mirrored block), diagonal blocks are mu_i
times the identity. The many-body pieces on a Fock sector are the second
quantization of that matrix plus the on-site interaction
sum_i U_i n_iup n_idown. The total spin operators s^alpha = sum_i 1/2
c_i^dag sigma_alpha c_i live here as well.
"""

from __future__ import annotations

import numpy as np

from .fock import FockBasis, ManyBodyOperator, one_body_operator
from .lattice import ModelGraph
from .spinor import PAULI


def build_single_particle(g: ModelGraph) -> np.ndarray:
    """First-quantized hopping matrix of the graph, Hermitian by construction."""
    n = g.n_sites
    h = np.zeros((2 * n, 2 * n), dtype=complex)
    for link in g.links:
        block = link.t * link.unitary()
        h[2 * link.i : 2 * link.i + 2, 2 * link.j : 2 * link.j + 2] = block
        h[2 * link.j : 2 * link.j + 2, 2 * link.i : 2 * link.i + 2] = block.conj().T
    for i, site in enumerate(g.sites):
        h[2 * i, 2 * i] = site.mu
        h[2 * i + 1, 2 * i + 1] = site.mu
    return h


def _check_sector(g: ModelGraph, basis: FockBasis):
    if basis.n_sites != g.n_sites:
        raise ValueError(
            f"basis has {basis.n_sites} sites but the graph has {g.n_sites}"
        )


def build_kinetic(g: ModelGraph, basis: FockBasis) -> ManyBodyOperator:
    """Hopping plus chemical-potential part on the sector (interaction-free)."""
    _check_sector(g, basis)
    return one_body_operator(basis, build_single_particle(g))


def build_interaction(g: ModelGraph, basis: FockBasis) -> ManyBodyOperator:
    """On-site interaction sum_i U_i n_iup n_idown (diagonal in the bit basis)."""
    _check_sector(g, basis)
    u = np.array([site.U for site in g.sites])
    diag = np.zeros(basis.dim)
    for col, state in enumerate(basis.states):
        state = int(state)
        for i in range(g.n_sites):
            if (state >> (2 * i)) & 1 and (state >> (2 * i + 1)) & 1:
                diag[col] += u[i]
    return ManyBodyOperator.from_diagonal(basis, diag)


def build_many_body(g: ModelGraph, basis: FockBasis) -> ManyBodyOperator:
    """Full sector Hamiltonian: kinetic + on-site interaction."""
    return build_kinetic(g, basis) + build_interaction(g, basis)


def spin_operators(basis: FockBasis):
    """Total spin (s^x, s^y, s^z) on the sector.

    These close the SU(2) algebra [s^a, s^b] = i eps_abc s^c and commute with
    any rotation-free Hamiltonian.
    """
    n_orb = basis.n_orbitals
    ops = []
    for sigma in PAULI:
        kernel = np.zeros((n_orb, n_orb), dtype=complex)
        for i in range(basis.n_sites):
            kernel[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = 0.5 * sigma
        ops.append(one_body_operator(basis, kernel))
    return tuple(ops)
