"""Fermionic Fock sectors over 2N spin-orbitals and sparse operator algebra.

Basis states are occupation bit words over spin-orbitals p = 2*site + spin
(spin 0 = up, 1 = down), sorted ascending as integers within a fixed particle
number. The elementary second-quantized matrix is c_p^dag c_q with the
Jordan-Wigner phase (-1)^(number of occupied orbitals below the acted one);
every other operator in the package is assembled from one-body kernels and
products of these sparse matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.sparse as sp

MAX_ORBITALS = 28
EIGENSOLVE_MAX_DIM = 5000
SPARSE_DROP_TOL = 1e-14


def jw_phase(state: int, p: int) -> int:
    """(-1)^(number of occupied orbitals with index < p) in the given word."""
    mask = (1 << p) - 1
    return -1 if (state & mask).bit_count() % 2 else 1


def apply_annihilation(state: int, p: int):
    """c_p |state>. Returns (phase, new_state) or None if orbital p is empty."""
    if not (state >> p) & 1:
        return None
    return jw_phase(state, p), state & ~(1 << p)


def apply_creation(state: int, p: int):
    """c_p^dag |state>. Returns (phase, new_state) or None if p is occupied."""
    if (state >> p) & 1:
        return None
    return jw_phase(state, p), state | (1 << p)


@dataclass(frozen=True, eq=False)
class FockBasis:
    """Ordered fixed-particle-number basis over 2*n_sites spin-orbitals."""

    n_sites: int
    n_particles: int
    states: np.ndarray

    @property
    def n_orbitals(self) -> int:
        return 2 * self.n_sites

    @property
    def dim(self) -> int:
        return len(self.states)

    def __len__(self) -> int:
        return len(self.states)

    def index(self, state: int) -> int:
        idx = int(np.searchsorted(self.states, state))
        if idx >= len(self.states) or self.states[idx] != state:
            raise KeyError(f"state {state:#x} not in basis")
        return idx

    def compatible(self, other: "FockBasis") -> bool:
        return (
            self.n_sites == other.n_sites and self.n_particles == other.n_particles
        )


def build_basis(n_sites: int, n_particles: int) -> FockBasis:
    """All 2*n_sites-orbital words with exactly n_particles set bits, ascending."""
    n_orb = 2 * n_sites
    if n_orb > MAX_ORBITALS:
        raise ValueError(
            f"{n_sites} sites -> {n_orb} spin-orbitals exceeds the desk-scale "
            f"guard of {MAX_ORBITALS}"
        )
    if not 0 <= n_particles <= n_orb:
        raise ValueError(f"particle number {n_particles} outside [0, {n_orb}]")
    states = sorted(
        sum(1 << p for p in occ) for occ in combinations(range(n_orb), n_particles)
    )
    return FockBasis(
        n_sites=n_sites,
        n_particles=n_particles,
        states=np.asarray(states, dtype=np.int64),
    )


class ManyBodyOperator:
    """Sparse complex operator over one Fock sector.

    Thin wrapper around a CSR matrix that pins the basis, drops entries below
    SPARSE_DROP_TOL, and supplies the small algebra (sums, products,
    adjoints) the symmetry checks need. Instances are treated as immutable.
    """

    def __init__(self, basis: FockBasis, matrix):
        matrix = sp.csr_matrix(matrix, dtype=complex, shape=(basis.dim, basis.dim))
        matrix.data[np.abs(matrix.data) < SPARSE_DROP_TOL] = 0.0
        matrix.eliminate_zeros()
        matrix.sort_indices()
        self.basis = basis
        self.matrix = matrix

    @classmethod
    def zero(cls, basis: FockBasis) -> "ManyBodyOperator":
        return cls(basis, sp.csr_matrix((basis.dim, basis.dim), dtype=complex))

    @classmethod
    def from_diagonal(cls, basis: FockBasis, diag) -> "ManyBodyOperator":
        return cls(basis, sp.diags(np.asarray(diag, dtype=complex), format="csr"))

    def _check(self, other: "ManyBodyOperator"):
        if not isinstance(other, ManyBodyOperator):
            raise TypeError("expected a ManyBodyOperator")
        if not self.basis.compatible(other.basis):
            raise ValueError("operators live on different bases")

    def __add__(self, other):
        self._check(other)
        return ManyBodyOperator(self.basis, self.matrix + other.matrix)

    def __sub__(self, other):
        self._check(other)
        return ManyBodyOperator(self.basis, self.matrix - other.matrix)

    def __mul__(self, scalar):
        return ManyBodyOperator(self.basis, self.matrix * complex(scalar))

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check(other)
        return ManyBodyOperator(self.basis, self.matrix @ other.matrix)

    def dagger(self) -> "ManyBodyOperator":
        return ManyBodyOperator(self.basis, self.matrix.conj().T.tocsr())

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        diff = self.matrix - self.matrix.conj().T
        return diff.nnz == 0 or bool(np.abs(diff.data).max() < tol)

    def expectation(self, vec: np.ndarray) -> complex:
        vec = np.asarray(vec, dtype=complex)
        return complex(np.vdot(vec, self.matrix @ vec))

    def __repr__(self):
        return (
            f"ManyBodyOperator(dim={self.basis.dim}, nnz={self.matrix.nnz}, "
            f"sector=({self.basis.n_sites} sites, {self.basis.n_particles} particles))"
        )


def hopping_operator(basis: FockBasis, p: int, q: int) -> ManyBodyOperator:
    """Matrix of c_p^dag c_q on the sector (the number operator when p == q)."""
    n_orb = basis.n_orbitals
    if not (0 <= p < n_orb and 0 <= q < n_orb):
        raise ValueError(f"spin-orbital indices ({p}, {q}) outside [0, {n_orb})")
    rows, cols, vals = [], [], []
    for col, state in enumerate(basis.states):
        hit = apply_annihilation(int(state), q)
        if hit is None:
            continue
        phase_q, mid = hit
        hit = apply_creation(mid, p)
        if hit is None:
            continue
        phase_p, out = hit
        rows.append(basis.index(out))
        cols.append(col)
        vals.append(float(phase_p * phase_q))
    matrix = sp.csr_matrix(
        (vals, (rows, cols)), shape=(basis.dim, basis.dim), dtype=complex
    )
    return ManyBodyOperator(basis, matrix)


def one_body_operator(basis: FockBasis, kernel: np.ndarray) -> ManyBodyOperator:
    """Second quantization of a one-body kernel: sum_pq kernel[p,q] c_p^dag c_q."""
    kernel = np.asarray(kernel, dtype=complex)
    n_orb = basis.n_orbitals
    if kernel.shape != (n_orb, n_orb):
        raise ValueError(f"kernel must be {n_orb}x{n_orb}, got {kernel.shape}")
    sources = [np.nonzero(np.abs(kernel[:, q]) > SPARSE_DROP_TOL)[0] for q in range(n_orb)]
    active = [q for q in range(n_orb) if len(sources[q])]
    rows, cols, vals = [], [], []
    for col, state in enumerate(basis.states):
        state = int(state)
        for q in active:
            hit = apply_annihilation(state, q)
            if hit is None:
                continue
            phase_q, mid = hit
            for p in sources[q]:
                hit2 = apply_creation(mid, int(p))
                if hit2 is None:
                    continue
                phase_p, out = hit2
                rows.append(basis.index(out))
                cols.append(col)
                vals.append(phase_p * phase_q * kernel[p, q])
    matrix = sp.csr_matrix(
        (vals, (rows, cols)), shape=(basis.dim, basis.dim), dtype=complex
    )
    return ManyBodyOperator(basis, matrix)


def commutator(a: ManyBodyOperator, b: ManyBodyOperator) -> ManyBodyOperator:
    """AB - BA."""
    return a @ b - b @ a


def frobenius_norm(a: ManyBodyOperator) -> float:
    if a.matrix.nnz == 0:
        return 0.0
    return float(np.sqrt(np.sum(np.abs(a.matrix.data) ** 2)))


def eigensolve_dense(a: ManyBodyOperator, hermitian_tol: float = 1e-10):
    """Full dense spectrum of a Hermitian sector operator.

    Returns (eigenvalues ascending, eigenvector columns). Guarded to
    dimension EIGENSOLVE_MAX_DIM; raises on non-Hermitian input.
    """
    if a.basis.dim > EIGENSOLVE_MAX_DIM:
        raise ValueError(
            f"dimension {a.basis.dim} exceeds the dense-eigensolve guard "
            f"of {EIGENSOLVE_MAX_DIM}"
        )
    if not a.is_hermitian(hermitian_tol):
        raise ValueError("eigensolve_dense requires a Hermitian operator")
    vals, vecs = np.linalg.eigh(a.to_dense())
    return vals, vecs
