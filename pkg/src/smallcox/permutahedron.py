"""Permutahedron 1-skeleton combinatorics and the free rank of the
pure triplet group.

Vertices are the permutations of (1..n); two are adjacent when they
differ by swapping a pair of adjacent positions, which makes the graph
the Cayley graph of S_n on adjacent transpositions: n! vertices,
n!(n-1)/2 edges, (n-1)-regular.

Closed walks of interest come in two kinds.  Braid moves at positions
(k, k+1, k+2) close up in six steps, and each hexagonal orbit is counted
once through its lexicographically least vertex, the one whose entries
at those three positions increase; there are n!(n-2)/6 hexagons.
Commuting moves at positions (i, i+1) and (j, j+1) with j - i >= 2 close
up in four steps and are counted the same way, giving
n!(n-2)(n-3)/8 squares.

Attaching a 2-cell along every hexagon yields a complex whose Euler
characteristic V - E + F6 equals -n!(2n-7)/6, and the pure triplet
group on n strands is free of rank 1 - chi = 1 + n!(2n-7)/6 for n >= 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

Vertex = tuple[int, ...]

MAX_STRANDS = 8  # 8! = 40320 vertices


@dataclass(frozen=True)
class PermutahedronSkeleton:
    n: int
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[int, int], ...]  # index pairs i < j

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class FaceCensus:
    n: int
    vertices: int
    edges: int
    hexagons: int
    squares: int

    @property
    def euler_characteristic(self) -> int:
        """chi of the complex with 2-cells on the hexagons only."""
        return self.vertices - self.edges + self.hexagons

    @property
    def rank(self) -> int:
        return 1 - self.euler_characteristic

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "V": self.vertices,
            "E": self.edges,
            "F6": self.hexagons,
            "F4": self.squares,
            "chi": self.euler_characteristic,
            "rank": self.rank,
        }


def _swap(v: Vertex, k: int) -> Vertex:
    return v[:k] + (v[k + 1], v[k]) + v[k + 2:]


def permutahedron_skeleton(n: int) -> PermutahedronSkeleton:
    if not 3 <= n <= MAX_STRANDS:
        raise ValueError(f"need 3 <= n <= {MAX_STRANDS}, got {n}")
    vertices = tuple(permutations(range(1, n + 1)))
    index = {v: i for i, v in enumerate(vertices)}
    edges = []
    for i, v in enumerate(vertices):
        for k in range(n - 1):
            j = index[_swap(v, k)]
            if i < j:
                edges.append((i, j))
    return PermutahedronSkeleton(n, vertices, tuple(edges))


def face_census(n: int) -> FaceCensus:
    """Count vertices, edges, hexagons and squares by direct enumeration."""
    skeleton = permutahedron_skeleton(n)
    hexagons = 0
    squares = 0
    for v in skeleton.vertices:
        for k in range(n - 2):
            if v[k] < v[k + 1] < v[k + 2]:
                hexagons += 1
        for i in range(n - 1):
            if v[i] < v[i + 1]:
                for j in range(i + 2, n - 1):
                    if v[j] < v[j + 1]:
                        squares += 1
    return FaceCensus(n, skeleton.vertex_count, skeleton.edge_count,
                      hexagons, squares)


def hexagon_orbit(v: Vertex, k: int) -> tuple[Vertex, ...]:
    """The six vertices reached from v by alternating moves k, k+1."""
    out = []
    w = v
    for step in range(6):
        out.append(w)
        w = _swap(w, k if step % 2 == 0 else k + 1)
    return tuple(out)


def vertex_face_counts(n: int) -> tuple[int, int]:
    """(hexagons, squares) through each vertex; the counts are the same
    at every vertex, and that uniformity is asserted."""
    census_hex = None
    census_sq = None
    skeleton = permutahedron_skeleton(n)
    hex_ids: dict[Vertex, set] = {v: set() for v in skeleton.vertices}
    sq_ids: dict[Vertex, set] = {v: set() for v in skeleton.vertices}
    for v in skeleton.vertices:
        for k in range(n - 2):
            least = v[:k] + tuple(sorted(v[k:k + 3])) + v[k + 3:]
            for w in hexagon_orbit(least, k):
                hex_ids[w].add((least, k))
        for i in range(n - 1):
            for j in range(i + 2, n - 1):
                least = list(v)
                if least[i] > least[i + 1]:
                    least[i], least[i + 1] = least[i + 1], least[i]
                if least[j] > least[j + 1]:
                    least[j], least[j + 1] = least[j + 1], least[j]
                sq_ids[v].add((tuple(least), i, j))
    for v in skeleton.vertices:
        h, s = len(hex_ids[v]), len(sq_ids[v])
        if census_hex is None:
            census_hex, census_sq = h, s
        elif (census_hex, census_sq) != (h, s):
            raise AssertionError("face membership is not vertex-transitive")
    return census_hex, census_sq


def pl_rank(n: int) -> int:
    """Free rank of the pure triplet group on n strands.

    Computed from the Euler characteristic of the hexagon complex for
    n up to 8, and from the resulting closed form n!(2n-7)/6 + 1 beyond
    the enumeration range.  Returns 0 for n = 3 (the pure group there is
    trivial).
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if n <= MAX_STRANDS:
        return face_census(n).rank
    return 1 + math.factorial(n) * (2 * n - 7) // 6
