"""Concrete scenarios: the one-twisted-bond ring and ground-state-spin checks.

The ring has plain -J hops on N-1 bonds and a theta = -pi rotation about y
on the closing bond. Its interaction-free sector is unitarily equivalent to
a spinless 2N-site ring threaded by half a flux quantum (uniform Peierls
phase pi/2N per bond), with dispersion -2J cos(pi n/N + pi/2N); the momentum
shift guarantees the two-fold degeneracy of every level. On top of that,
ring_symmetry_breaking quantifies how the on-site interaction destroys the
pseudo-spin conservation that survives at U = 0.

lieb_ground_state_spin measures the total-spin quantum number of the ground
multiplet of a (gauge-fixed) Hubbard model, the quantity constrained by the
classic bipartite half-filling theorems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import FockBasis, build_basis, commutator, eigensolve_dense, frobenius_norm
from .gauge import GaugeTransform, fix_gauge, rotated_spin_generators
from .hamiltonian import build_interaction, build_kinetic, build_single_particle
from .lattice import LinkRotation, LinkSpec, ModelGraph, SiteSpec
from .symmetry import diagonalize_and_pair, pseudo_spin_generators

_Y_AXIS = (0.0, 1.0, 0.0)


@dataclass(frozen=True)
class RingSpec:
    """N-site ring with hopping J > 0 and uniform on-site interaction U."""

    n_sites: int
    J: float = 1.0
    U: float = 0.0

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValueError("ring needs at least two sites")
        if not self.J > 0:
            raise ValueError("hopping energy J must be positive")


@dataclass(frozen=True)
class Bipartition:
    """Sublattices A and B with every link crossing between them."""

    a: frozenset[int]
    b: frozenset[int]


def build_ring(spec: RingSpec) -> ModelGraph:
    """The ring graph: rotation-free bonds except theta = -pi about y on (0, N-1).

    The degenerate N = 2 case collapses the two parallel bonds into a single
    link carrying their sum -J (I + exp(-i pi sigma_y / 2)), which is again a
    real amplitude times an SU(2) rotation: t = -sqrt(2) J, theta = -pi/2
    about y.
    """
    n = spec.n_sites
    sites = [SiteSpec(mu=0.0, U=spec.U) for _ in range(n)]
    if n == 2:
        merged = LinkSpec(
            i=0,
            j=1,
            t=-math.sqrt(2.0) * spec.J,
            rotation=LinkRotation(theta=-math.pi / 2.0, axis=_Y_AXIS),
        )
        return ModelGraph(sites=sites, links=[merged])
    links = [
        LinkSpec(i=j, j=j + 1, t=-spec.J, rotation=LinkRotation(theta=0.0, axis=_Y_AXIS))
        for j in range(n - 1)
    ]
    links.append(
        LinkSpec(i=0, j=n - 1, t=-spec.J, rotation=LinkRotation(theta=-math.pi, axis=_Y_AXIS))
    )
    return ModelGraph(sites=sites, links=links)


def map_to_flux_ring(spec: RingSpec):
    """Spinless 2N-site ring with Peierls phase pi/2N per bond.

    Returns (matrix, interaction_pairs): the 2N x 2N hopping matrix with
    uniform phase factors whose loop product is exp(i pi) (half a flux
    quantum), and the site pairs (j, j+N) whose joint occupation reproduces
    the on-site interaction in the mapped frame.
    """
    n2 = 2 * spec.n_sites
    phase = -spec.J * np.exp(1j * math.pi / n2)
    m = np.zeros((n2, n2), dtype=complex)
    for j in range(n2):
        k = (j + 1) % n2
        m[j, k] += phase
        m[k, j] += phase.conjugate()
    pairs = [(j, j + spec.n_sites) for j in range(spec.n_sites)]
    return m, pairs


def analytic_dispersion(spec: RingSpec) -> np.ndarray:
    """Sorted closed-form levels -2J cos(pi n / N + pi / 2N), n = 1..2N."""
    n = spec.n_sites
    levels = [
        -2.0 * spec.J * math.cos(math.pi * k / n + math.pi / (2 * n))
        for k in range(1, 2 * n + 1)
    ]
    return np.sort(np.asarray(levels))


def ring_symmetry_breaking(spec: RingSpec, filling: int) -> tuple[float, float]:
    """Pseudo-spin conservation norms of the ring at U = 0 and at U = spec.U.

    Returns (norm_u0, norm_u) = max over alpha of ||[F^alpha, H]||_F with the
    interaction switched off and switched on. The first is always numerical
    zero; for N >= 3 and U != 0 the second is strictly positive, which is the
    topology-plus-interaction breaking this scenario demonstrates (the merged
    N = 2 bond is tree-like and does not break).
    """
    n = spec.n_sites
    if not 2 <= filling <= 2 * n - 2:
        raise ValueError(
            f"filling {filling} outside [2, {2 * n - 2}]: sectors without "
            "possible double occupation cannot show the interaction"
        )
    g = build_ring(spec)
    basis = build_basis(n, filling)
    sol = diagonalize_and_pair(build_single_particle(g))
    pseudo = pseudo_spin_generators(sol, basis)
    h_t = build_kinetic(g, basis)
    h = h_t + build_interaction(g, basis)
    norm_u0 = max(frobenius_norm(commutator(f, h_t)) for f in pseudo)
    norm_u = max(frobenius_norm(commutator(f, h)) for f in pseudo)
    return norm_u0, norm_u


def bipartition(g: ModelGraph) -> Bipartition:
    """Two-color the graph; raises if an odd cycle makes that impossible."""
    color = {0: 0}
    queue = [0]
    while queue:
        u = queue.pop()
        for v, _ in g.neighbors(u):
            if v not in color:
                color[v] = 1 - color[u]
                queue.append(v)
            elif color[v] == color[u]:
                raise ValueError("graph is not bipartite")
    a = frozenset(s for s, c in color.items() if c == 0)
    b = frozenset(s for s, c in color.items() if c == 1)
    return Bipartition(a=a, b=b)


def _interaction_mode(g: ModelGraph) -> str:
    us = [site.U for site in g.sites]
    if any(u > 0 for u in us) and all(u >= 0 for u in us):
        return "repulsive"
    if any(u < 0 for u in us) and all(u <= 0 for u in us):
        return "attractive"
    if all(u == 0 for u in us):
        return "free"
    raise ValueError("mixed-sign on-site interactions have no ground-spin contract")


def _has_rotations(g: ModelGraph) -> bool:
    for link in g.links:
        if isinstance(link.rotation, np.ndarray):
            if np.abs(link.rotation - np.eye(2)).max() > 1e-12:
                return True
        elif link.rotation.theta != 0.0:
            return True
    return False


def lieb_ground_state_spin(g: ModelGraph, basis: FockBasis) -> tuple[float, int]:
    """Total spin S and degeneracy of the ground multiplet, in the gauge frame.

    The graph is gauge-fixed first (it must be rotation-free or simply
    connected, so the fixing is complete) and the spin is measured with the
    rotated Casimir S.S on the lowest eigenspace; S comes from matching
    S(S+1) to the nearest half-integer within 5e-3. In repulsive mode the
    graph must be bipartite at half filling and the multiplet size 2S+1 is
    verified; in attractive mode the filling must be even.
    """
    mode = _interaction_mode(g)
    if _has_rotations(g):
        if len(g.links) != g.n_sites - 1:
            raise ValueError(
                "spin-orbit rotations on a multi-connected graph cannot be "
                "gauge-fixed away; ground-spin measurement undefined"
            )
        transform, _ = fix_gauge(g)
    else:
        transform = GaugeTransform.identity(g.n_sites)
    if mode == "repulsive":
        bipartition(g)
        if basis.n_particles != g.n_sites:
            raise ValueError("repulsive mode requires half filling")
    elif mode == "attractive" and basis.n_particles % 2:
        raise ValueError("attractive mode requires an even particle number")

    h = build_kinetic(g, basis) + build_interaction(g, basis)
    eigenvalues, vectors = eigensolve_dense(h)
    spread = float(eigenvalues[-1] - eigenvalues[0])
    gap = 1e-8 * max(1.0, spread)
    degeneracy = int(np.sum(eigenvalues < eigenvalues[0] + gap))

    sx, sy, sz = rotated_spin_generators(transform, basis)
    casimir = sx @ sx + sy @ sy + sz @ sz
    ground = vectors[:, 0]
    value = casimir.expectation(ground).real
    spin = 0.5 * (-1.0 + math.sqrt(1.0 + 4.0 * max(value, 0.0)))
    nearest = round(2.0 * spin) / 2.0
    if abs(spin - nearest) > 5e-3:
        raise ValueError(
            f"S(S+1) = {value:.6f} does not match a half-integer spin "
            "(degenerate crossing or bug)"
        )
    if mode == "repulsive" and degeneracy != int(round(2 * nearest + 1)):
        raise ValueError(
            f"ground degeneracy {degeneracy} differs from the multiplet size "
            f"{int(round(2 * nearest + 1))} expected for S = {nearest}"
        )
    return nearest, degeneracy
