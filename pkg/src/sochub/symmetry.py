"""Kramers pairing and the emergent SU(2) of time-reversal-symmetric hopping.

Any spin rotation form of the link matrices makes the single-particle
Hamiltonian commute with the antiunitary T = -i sigma_y K (applied per site
block), so its spectrum splits into degenerate doublets (psi, T psi). From
one mode pair per doublet this module assembles the conserved pseudo-spin
generators F^alpha = sum_k 1/2 f_k^dag sigma_alpha f_k on a Fock sector,
checks their SU(2) algebra, and aggregates the commutator-norm evidence for
which SU(2) family (bare spin, rotated spin, pseudo-spin) survives a given
graph topology and interaction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gauge as _gauge
from .fock import FockBasis, ManyBodyOperator, commutator, frobenius_norm, one_body_operator
from .hamiltonian import (
    build_interaction,
    build_kinetic,
    build_single_particle,
    spin_operators,
)
from .lattice import ModelGraph, Topology, classify_topology, holonomy_report
from .spinor import PAULI, SIGMA_Y

DEFAULT_PAIR_TOL = 1e-9

VERDICT_BARE = "bare spin SU(2) conserved"
VERDICT_ROTATED = "SU(2) conserved (rotated spin)"
VERDICT_PSEUDO = "SU(2) conserved (pseudo-spin)"
VERDICT_BROKEN = "SU(2) broken by on-site interaction"


@dataclass(frozen=True, eq=False)
class SingleParticleSolution:
    """Eigen-decomposition of a 2N x 2N hopping matrix with Kramers pairing.

    modes holds the eigenvector columns; pairs lists N index pairs (k1, k2)
    whose columns are time-reversal partners at (numerically) equal energy.
    """

    eigenvalues: np.ndarray
    modes: np.ndarray
    pairs: tuple[tuple[int, int], ...]


def time_reverse_vector(psi: np.ndarray) -> np.ndarray:
    """Apply T = -i sigma_y K blockwise per site to a 2N spinor."""
    psi = np.asarray(psi, dtype=complex)
    out = np.empty_like(psi)
    out[0::2] = -psi[1::2].conj()
    out[1::2] = psi[0::2].conj()
    return out


def _is_blockwise_trs(h: np.ndarray, tol: float) -> bool:
    n = h.shape[0] // 2
    t_block = np.kron(np.eye(n), -1j * SIGMA_Y)
    return bool(np.abs(t_block @ h.conj() @ t_block.conj().T - h).max() < tol)


def _clusters(eigenvalues: np.ndarray, threshold: float):
    """Group sorted eigenvalues whose consecutive gaps fall below threshold."""
    clusters = [[0]]
    for k in range(1, len(eigenvalues)):
        if eigenvalues[k] - eigenvalues[k - 1] < threshold:
            clusters[-1].append(k)
        else:
            clusters.append([k])
    return clusters


def diagonalize_and_pair(
    h1: np.ndarray, tol: float = DEFAULT_PAIR_TOL
) -> SingleParticleSolution:
    """Diagonalize a time-reversal-symmetric hopping matrix and pair its modes.

    Eigenvalues are clustered with a gap threshold tol * max(1, spectral
    range); inside each cluster, pairs are formed as (psi, T psi) by a greedy
    sweep: take the first remaining vector, compute its T-partner, verify
    the Kramers orthogonality, project both out, repeat. Odd cluster sizes
    (impossible under time reversal) raise.
    """
    h1 = np.asarray(h1, dtype=complex)
    dim = h1.shape[0]
    if h1.shape != (dim, dim) or dim % 2:
        raise ValueError("expected a 2N x 2N matrix")
    if np.abs(h1 - h1.conj().T).max() > 1e-10:
        raise ValueError("matrix must be Hermitian")
    if not _is_blockwise_trs(h1, 1e-10):
        raise ValueError("matrix is not time-reversal symmetric")

    eigenvalues, vectors = np.linalg.eigh(h1)
    spread = float(eigenvalues[-1] - eigenvalues[0])
    threshold = tol * max(1.0, spread)

    modes = np.empty_like(vectors)
    pairs = []
    col = 0
    for cluster in _clusters(eigenvalues, threshold):
        if len(cluster) % 2:
            raise ValueError(
                f"degenerate cluster of odd size {len(cluster)}: time-reversal "
                "violation or pairing-tolerance failure"
            )
        remaining = vectors[:, cluster]
        while remaining.shape[1]:
            v = remaining[:, 0]
            v = v / np.linalg.norm(v)
            w = time_reverse_vector(v)
            overlap = np.vdot(v, w)
            if abs(overlap) > 1e-8:
                raise ValueError("time-reversal partner not orthogonal (Kramers failure)")
            # Keep w inside the cluster span; residual outside signals a
            # tolerance failure rather than roundoff.
            proj = remaining @ (remaining.conj().T @ w)
            if np.linalg.norm(w - proj) > 1e-6:
                raise ValueError(
                    "time-reversal partner leaves the degenerate cluster; "
                    "increase the pairing tolerance"
                )
            w = proj - v * np.vdot(v, proj)
            w = w / np.linalg.norm(w)
            modes[:, col] = v
            modes[:, col + 1] = w
            pairs.append((col, col + 1))
            col += 2
            rest = remaining[:, 1:]
            rest = rest - np.outer(v, v.conj() @ rest) - np.outer(w, w.conj() @ rest)
            if rest.shape[1]:
                q, r = np.linalg.qr(rest)
                keep = np.abs(np.diag(r)) > 1e-8
                remaining = q[:, keep]
            else:
                remaining = rest

    sol = SingleParticleSolution(
        eigenvalues=eigenvalues, modes=modes, pairs=tuple(pairs)
    )
    gram = np.abs(modes.conj().T @ modes - np.eye(dim)).max()
    if gram > 1e-8:
        raise ValueError(f"paired mode matrix lost unitarity ({gram:.2e})")
    return sol


def max_pair_gap(sol: SingleParticleSolution) -> float:
    return max(
        (abs(sol.eigenvalues[a] - sol.eigenvalues[b]) for a, b in sol.pairs),
        default=0.0,
    )


def pseudo_spin_kernels(sol: SingleParticleSolution) -> tuple[np.ndarray, ...]:
    """One-body kernels sum_k 1/2 Psi_k sigma_alpha Psi_k^dag of the pairing."""
    dim = sol.modes.shape[0]
    kernels = [np.zeros((dim, dim), dtype=complex) for _ in range(3)]
    for a, b in sol.pairs:
        psi = sol.modes[:, [a, b]]
        for alpha, sigma in enumerate(PAULI):
            kernels[alpha] += 0.5 * psi @ sigma @ psi.conj().T
    return tuple(kernels)


def pseudo_spin_generators(sol: SingleParticleSolution, basis: FockBasis):
    """Conserved pseudo-spin (F^x, F^y, F^z) on the sector.

    F^alpha = sum over Kramers pairs of 1/2 f_k^dag sigma_alpha f_k, with the
    mode operators f expanded in the site basis through the eigenvector
    columns.
    """
    if sol.modes.shape[0] != basis.n_orbitals:
        raise ValueError(
            f"solution has {sol.modes.shape[0]} orbitals, basis has {basis.n_orbitals}"
        )
    return tuple(one_body_operator(basis, k) for k in pseudo_spin_kernels(sol))


def su2_algebra_residual(ops) -> float:
    """max_ab || [ops_a, ops_b] - i eps_abc ops_c ||_F over the three pairs."""
    x, y, z = ops
    residual = 0.0
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        residual = max(residual, frobenius_norm(commutator(a, b) - 1j * c))
    return residual


@dataclass(frozen=True)
class SymmetryReport:
    """Commutator-norm evidence for the surviving SU(2) family on one sector."""

    n_sites: int
    n_particles: int
    dim: int
    topology: Topology
    trivializable: bool
    kramers_ok: bool
    algebra_residual: float
    commutator_norms: dict[str, dict[str, float]]
    threshold: float
    verdict: str


def _conserved(norms: dict[str, dict[str, float]], family: str, threshold: float) -> bool:
    keys = [f"{family}^x", f"{family}^y", f"{family}^z"]
    return all(k in norms and norms[k]["H"] < threshold for k in keys)


def _verdict(norms, trivializable: bool, threshold: float) -> str:
    if _conserved(norms, "s", threshold):
        return VERDICT_BARE
    if trivializable and _conserved(norms, "S", threshold):
        return VERDICT_ROTATED
    if _conserved(norms, "F", threshold):
        return VERDICT_PSEUDO
    return VERDICT_BROKEN


def analyze(
    g: ModelGraph, basis: FockBasis, tol: float = DEFAULT_PAIR_TOL
) -> SymmetryReport:
    """Full symmetry scan of a model on one Fock sector.

    Builds H_T, H_U and H, the bare spin s^alpha, the pseudo-spin F^alpha
    from the Kramers pairing, and (when the holonomies are scalar) the
    gauge-rotated spin S^alpha; records each family's commutator Frobenius
    norms against all three Hamiltonian pieces. Conservation is judged
    against a zero threshold of 1e-9 times the sector dimension.
    """
    topology = classify_topology(g)
    trivializable = holonomy_report(g).trivializable

    h_t = build_kinetic(g, basis)
    h_u = build_interaction(g, basis)
    h = h_t + h_u

    sol = diagonalize_and_pair(build_single_particle(g), tol)
    spread = float(sol.eigenvalues[-1] - sol.eigenvalues[0])
    kramers_ok = max_pair_gap(sol) <= tol * max(1.0, spread)

    families = {
        "s": spin_operators(basis),
        "F": pseudo_spin_generators(sol, basis),
    }
    if trivializable:
        transform, _ = _gauge.fix_gauge(g)
        families["S"] = _gauge.rotated_spin_generators(transform, basis)

    targets = {"H_T": h_t, "H_U": h_u, "H": h}
    norms: dict[str, dict[str, float]] = {}
    for family, ops in families.items():
        for label, op in zip(("x", "y", "z"), ops):
            norms[f"{family}^{label}"] = {
                name: frobenius_norm(commutator(op, target))
                for name, target in targets.items()
            }

    threshold = 1e-9 * basis.dim
    return SymmetryReport(
        n_sites=g.n_sites,
        n_particles=basis.n_particles,
        dim=basis.dim,
        topology=topology,
        trivializable=trivializable,
        kramers_ok=kramers_ok,
        algebra_residual=su2_algebra_residual(families["F"]),
        commutator_norms=norms,
        threshold=threshold,
        verdict=_verdict(norms, trivializable, threshold),
    )
