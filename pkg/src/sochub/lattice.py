"""Model graphs and their topology.

A model is a connected undirected graph whose sites carry an on-site energy
mu and an interaction strength U, and whose links carry a real hopping
amplitude t together with a spin rotation (axis-angle, or a raw SU(2) matrix
for graphs produced by gauge fixing). This module classifies the graph as
simply- or multi-connected, builds the deterministic BFS spanning tree and
its fundamental cycles, and evaluates cycle holonomies, i.e. ordered products
of the normalized link matrices around closed walks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .spinor import (
    IDENTITY_2,
    LinkRotation,
    is_scalar_multiple_of_identity,
    is_unitary,
    su2_from_axis_angle,
)

SCALAR_HOLONOMY_TOL = 1e-10


class Topology(enum.Enum):
    SIMPLY_CONNECTED = "simply_connected"
    MULTI_CONNECTED = "multi_connected"


@dataclass(frozen=True)
class SiteSpec:
    """On-site data: chemical potential mu and Hubbard interaction U."""

    mu: float = 0.0
    U: float = 0.0

    def __post_init__(self):
        mu, U = float(self.mu), float(self.U)
        if not (math.isfinite(mu) and math.isfinite(U)):
            raise ValueError(f"site parameters must be finite, got mu={self.mu}, U={self.U}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "U", U)


@dataclass(frozen=True, eq=False)
class LinkSpec:
    """One undirected link i<j with amplitude t and a spin rotation.

    The rotation is either a LinkRotation (axis-angle) or a raw 2x2 SU(2)
    matrix; the latter appears on chord links of gauge-transformed graphs,
    where decomposing back to axis-angle would be lossy.
    """

    i: int
    j: int
    t: float
    rotation: LinkRotation | np.ndarray

    def __post_init__(self):
        i, j, t = int(self.i), int(self.j), float(self.t)
        if i >= j:
            raise ValueError(f"link indices must satisfy i < j, got ({self.i}, {self.j})")
        if not math.isfinite(t):
            raise ValueError(f"hopping amplitude must be a finite real, got {self.t!r}")
        rot = self.rotation
        if isinstance(rot, np.ndarray):
            rot = np.asarray(rot, dtype=complex)
            if rot.shape != (2, 2):
                raise ValueError("raw link matrix must be 2x2")
            if not is_unitary(rot, 1e-10) or abs(np.linalg.det(rot) - 1.0) > 1e-10:
                raise ValueError("raw link matrix must be SU(2) within 1e-10")
            rot.setflags(write=False)
        elif not isinstance(rot, LinkRotation):
            raise TypeError("rotation must be a LinkRotation or a 2x2 ndarray")
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "rotation", rot)

    def unitary(self) -> np.ndarray:
        """The normalized link matrix T_ij / t_ij, oriented i -> j."""
        if isinstance(self.rotation, LinkRotation):
            return su2_from_axis_angle(self.rotation)
        return self.rotation


class ModelGraph:
    """Validated connected graph of SiteSpecs and LinkSpecs."""

    def __init__(self, sites, links):
        self.sites: tuple[SiteSpec, ...] = tuple(sites)
        self.links: tuple[LinkSpec, ...] = tuple(links)
        n = len(self.sites)
        if n == 0:
            raise ValueError("graph needs at least one site")
        seen = set()
        for link in self.links:
            if not isinstance(link, LinkSpec):
                raise TypeError("links must be LinkSpec instances")
            if link.j >= n:
                raise ValueError(f"link ({link.i}, {link.j}) references a missing site")
            pair = (link.i, link.j)
            if pair in seen:
                raise ValueError(f"duplicate link for site pair {pair}")
            seen.add(pair)
        self._adjacency = [[] for _ in range(n)]
        for idx, link in enumerate(self.links):
            self._adjacency[link.i].append((link.j, idx))
            self._adjacency[link.j].append((link.i, idx))
        for nbrs in self._adjacency:
            nbrs.sort()
        if self._reachable_from_root() != n:
            raise ValueError("graph must be connected")

    @property
    def n_sites(self) -> int:
        return len(self.sites)

    def neighbors(self, site: int):
        """(neighbor, link index) pairs in ascending neighbor order."""
        return tuple(self._adjacency[site])

    def link_between(self, u: int, v: int) -> int:
        """Index of the link joining u and v; raises if absent."""
        for nbr, idx in self._adjacency[u]:
            if nbr == v:
                return idx
        raise ValueError(f"no link between sites {u} and {v}")

    def step_matrix(self, u: int, v: int) -> np.ndarray:
        """Normalized link matrix for the directed step u -> v.

        The stored matrix applies when stepping i -> j along a link (i, j);
        the adjoint applies against the stored orientation.
        """
        link = self.links[self.link_between(u, v)]
        m = link.unitary()
        return m if (u, v) == (link.i, link.j) else m.conj().T

    def _reachable_from_root(self) -> int:
        seen = {0}
        queue = [0]
        while queue:
            u = queue.pop()
            for v, _ in self._adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen)


@dataclass(frozen=True)
class HolonomyReport:
    """Fundamental-cycle holonomies and whether they are all scalar."""

    cycles: tuple[tuple[tuple[int, int], ...], ...]
    holonomies: tuple[np.ndarray, ...]
    trivializable: bool


def classify_topology(g: ModelGraph) -> Topology:
    """A connected graph is simply connected iff it is a tree."""
    if len(g.links) == g.n_sites - 1:
        return Topology.SIMPLY_CONNECTED
    return Topology.MULTI_CONNECTED


def bfs_tree(g: ModelGraph):
    """Deterministic BFS tree rooted at site 0, lowest-index neighbors first.

    Returns (order, parent, tree_links, chord_links) where order is the BFS
    visit order, parent[v] is v's tree parent (-1 for the root), and the two
    link-index lists partition g.links.
    """
    n = g.n_sites
    parent = [-1] * n
    visited = [False] * n
    visited[0] = True
    order = [0]
    tree_links = []
    head = 0
    while head < len(order):
        u = order[head]
        head += 1
        for v, idx in g.neighbors(u):
            if not visited[v]:
                visited[v] = True
                parent[v] = u
                order.append(v)
                tree_links.append(idx)
    in_tree = set(tree_links)
    chord_links = [i for i in range(len(g.links)) if i not in in_tree]
    return order, parent, tree_links, chord_links


def spanning_tree(g: ModelGraph):
    """(tree edge indices, chord edge indices) of the deterministic BFS tree."""
    _, _, tree_links, chord_links = bfs_tree(g)
    return tree_links, chord_links


def _tree_path(parent, u, v):
    """Site path u -> v through the tree."""
    anc_u = [u]
    while parent[anc_u[-1]] != -1:
        anc_u.append(parent[anc_u[-1]])
    anc_v = [v]
    while parent[anc_v[-1]] != -1:
        anc_v.append(parent[anc_v[-1]])
    in_u = {s: k for k, s in enumerate(anc_u)}
    for k, s in enumerate(anc_v):
        if s in in_u:
            return anc_u[: in_u[s] + 1] + anc_v[:k][::-1]
    raise AssertionError("tree paths must meet at a common ancestor")


def fundamental_cycles(g: ModelGraph):
    """One closed walk per chord: the tree path i -> j closed by the chord.

    Each cycle is a tuple of directed steps (u, v); cycles are ordered by
    chord link index, so reports are deterministic.
    """
    _, parent, _, chord_links = bfs_tree(g)
    cycles = []
    for idx in chord_links:
        link = g.links[idx]
        path = _tree_path(parent, link.i, link.j)
        steps = tuple(zip(path[:-1], path[1:])) + ((link.j, link.i),)
        cycles.append(steps)
    return cycles


def cycle_holonomy(g: ModelGraph, cycle) -> np.ndarray:
    """Ordered product of normalized link matrices around a closed walk.

    cycle is a sequence of directed steps (u, v); consecutive steps must
    chain and the walk must return to its starting site. Traversal against
    a link's stored orientation uses the adjoint matrix.
    """
    steps = [(int(u), int(v)) for u, v in cycle]
    if not steps:
        raise ValueError("cycle must contain at least one step")
    for (u1, v1), (u2, _) in zip(steps[:-1], steps[1:]):
        if v1 != u2:
            raise ValueError(f"walk steps do not chain: ({u1},{v1}) then ({u2},..)")
    if steps[-1][1] != steps[0][0]:
        raise ValueError("walk is not closed")
    hol = IDENTITY_2.copy()
    for u, v in steps:
        hol = hol @ g.step_matrix(u, v)
    return hol


def holonomy_report(g: ModelGraph) -> HolonomyReport:
    """Holonomy of every fundamental cycle, and the trivializability verdict.

    The graph's link rotations can be absorbed into per-site unitaries iff
    every fundamental-cycle holonomy is a scalar multiple of the identity
    (an Abelian phase does not obstruct the spin-sector gauge fixing).
    Trees have no cycles and are trivializable.
    """
    cycles = tuple(fundamental_cycles(g))
    holonomies = tuple(cycle_holonomy(g, c) for c in cycles)
    trivializable = all(
        is_scalar_multiple_of_identity(h, SCALAR_HOLONOMY_TOL) for h in holonomies
    )
    return HolonomyReport(cycles=cycles, holonomies=holonomies, trivializable=trivializable)
