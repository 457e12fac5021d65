"""Graph families and exact distance matrices.

Vertex order is fixed by construction: apex vertices come first (copy by
copy), then cycle vertices; a dumbbell lists copy 1 completely before
copy 2. Block structures of the distance matrices therefore appear as
contiguous sub-blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DisconnectedGraphError, InvalidInputError, InvalidParameterError


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    adjacency: np.ndarray
    family: str | None = None
    params: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        adj = np.array(self.adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise InvalidInputError("adjacency must be a square matrix")
        if adj.diagonal().any():
            raise InvalidInputError("self-loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise InvalidInputError("adjacency must be symmetric")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], **labels) -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            adj[u, v] = adj[v, u] = True
        return cls(adj, **labels)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def num_edges(self) -> int:
        return int(np.count_nonzero(self.adjacency)) // 2

    def edges(self) -> list[tuple[int, int]]:
        rows, cols = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(rows.tolist(), cols.tolist()))

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        return bool((kernels.apsp(self.adjacency)[0] >= 0).all())

    def relabeled(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``perm[i]`` renamed to ``i``."""
        perm = np.asarray(perm)
        return Graph(self.adjacency[np.ix_(perm, perm)], self.family, self.params)

    def describe(self) -> str:
        if self.family is None:
            return f"graph(n={self.n})"
        args = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family}({args})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    __hash__ = None

    def __repr__(self):
        return f"<Graph {self.describe()} n={self.n} e={self.num_edges}>"


@dataclass(frozen=True)
class ExactMatrix:
    """Dense square matrix of Python integers (row-major)."""

    rows: tuple[tuple[int, ...], ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise InvalidInputError("ExactMatrix must be square with positive order")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_array(cls, a) -> "ExactMatrix":
        a = np.asarray(a)
        if a.dtype.kind not in "iub" and a.dtype != object:
            raise InvalidInputError(f"integer entries required, got dtype {a.dtype}")
        return cls(tuple(map(tuple, a.tolist())))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def ones(cls, n: int) -> "ExactMatrix":
        return cls(tuple((1,) * n for _ in range(n)))

    @property
    def order(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, k: int) -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(k * x for x in r) for r in self.rows))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.rows)))

    def is_symmetric(self) -> bool:
        n = self.order
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i + 1, n))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.order))

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)

    def max_abs_row_sum(self) -> int:
        return max(sum(abs(x) for x in r) for r in self.rows)

    def matvec(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(x * y for x, y in zip(r, v)) for r in self.rows)

    def to_numpy(self, dtype=np.float64) -> np.ndarray:
        return np.array(self.rows, dtype=dtype)

    def fits_int64(self) -> bool:
        if "fits" not in self._cache:
            lim = 2**62
            self._cache["fits"] = all(-lim < x < lim for r in self.rows for x in r)
        return self._cache["fits"]


# --------------------------------------------------------------------------
# Constructors
# --------------------------------------------------------------------------


def _require(cond: bool, message: str):
    if not cond:
        raise InvalidParameterError(message)


def check_param(name: str, value, minimum: int, why: str):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
    _require(value >= minimum, f"{name} must be >= {minimum}: {why}")


def cycle(n: int) -> Graph:
    check_param("n", n, 3, "C_n undefined")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)), family="cycle", params=(("n", n),))


def empty_graph(m: int) -> Graph:
    check_param("m", m, 1, "empty graph needs a vertex")
    return Graph(np.zeros((m, m), dtype=bool), family="empty", params=(("m", m),))


def complete(n: int) -> Graph:
    check_param("n", n, 1, "K_n needs a vertex")
    adj = ~np.eye(n, dtype=bool)
    return Graph(adj, family="complete", params=(("n", n),))


def complete_bipartite(p: int, q: int) -> Graph:
    check_param("p", p, 1, "K_{p,q} part sizes must be positive")
    check_param("q", q, 1, "K_{p,q} part sizes must be positive")
    adj = np.zeros((p + q, p + q), dtype=bool)
    adj[:p, p:] = True
    adj[p:, :p] = True
    return Graph(adj, family="complete_bipartite", params=(("p", p), ("q", q)))


def union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; vertices of ``g2`` are shifted by ``g1.n``."""
    n1, n2 = g1.n, g2.n
    adj = np.zeros((n1 + n2, n1 + n2), dtype=bool)
    adj[:n1, :n1] = g1.adjacency
    adj[n1:, n1:] = g2.adjacency
    return Graph(adj)


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between ``g1`` and ``g2``."""
    n1 = g1.n
    adj = union(g1, g2).adjacency.copy()
    adj[:n1, n1:] = True
    adj[n1:, :n1] = True
    return Graph(adj)


def generalized_wheel(m: int, n: int) -> Graph:
    """``m`` mutually non-adjacent apexes joined to an ``n``-cycle."""
    check_param("m", m, 1, "at least one apex vertex is needed")
    check_param("n", n, 3, "C_n undefined")
    g = join(empty_graph(m), cycle(n))
    return Graph(g.adjacency, family="wheel", params=(("m", m), ("n", n)))


def egw(a: int, m: int, n: int) -> Graph:
    """Join of ``a`` disjoint copies of the empty graph on ``m`` vertices with C_n."""
    check_param("a", a, 1, "at least one copy of the empty graph is needed")
    check_param("m", m, 1, "at least one apex vertex is needed")
    check_param("n", n, 3, "C_n undefined")
    apexes = empty_graph(m)
    for _ in range(a - 1):
        apexes = union(apexes, empty_graph(m))
    g = join(apexes, cycle(n))
    return Graph(g.adjacency, family="egw", params=(("a", a), ("m", m), ("n", n)))


def kpp_join_cycle(p: int, n: int) -> Graph:
    check_param("p", p, 1, "K_{p,p} part size must be positive")
    check_param("n", n, 3, "C_n undefined")
    g = join(complete_bipartite(p, p), cycle(n))
    return Graph(g.adjacency, family="kpp", params=(("p", p), ("n", n)))


def dumbbell(m: int, n: int) -> Graph:
    """Two generalized wheels with apex ``j`` of one matched to apex ``j`` of the other."""
    check_param("m", m, 1, "at least one apex vertex is needed")
    check_param("n", n, 3, "C_n undefined")
    w = generalized_wheel(m, n)
    adj = union(w, w).adjacency.copy()
    half = m + n
    for j in range(m):
        adj[j, half + j] = adj[half + j, j] = True
    return Graph(adj, family="dumbbell", params=(("m", m), ("n", n)))


def dumbbell_swap(m: int, n: int) -> list[int]:
    """Vertex permutation exchanging the two copies of ``dumbbell(m, n)``."""
    half = m + n
    return [(v + half) % (2 * half) for v in range(2 * half)]


FAMILIES = {
    "wheel": (generalized_wheel, ("m", "n")),
    "egw": (egw, ("a", "m", "n")),
    "kpp": (kpp_join_cycle, ("p", "n")),
    "dumbbell": (dumbbell, ("m", "n")),
}


def build_family(name: str, **params) -> Graph:
    try:
        ctor, names = FAMILIES[name]
    except KeyError:
        raise InvalidParameterError(f"unknown family {name!r}; expected one of {sorted(FAMILIES)}") from None
    missing = [k for k in names if k not in params]
    extra = [k for k in params if k not in names]
    if missing or extra:
        raise InvalidParameterError(f"family {name} takes parameters {','.join(names)}; "
                                    f"missing {missing or 'none'}, unexpected {extra or 'none'}")
    return ctor(*(params[k] for k in names))


# --------------------------------------------------------------------------
# Matrices
# --------------------------------------------------------------------------


def distance_array(g: Graph) -> np.ndarray:
    """Distance matrix as an int64 array; raises on disconnected input."""
    d = kernels.apsp(g.adjacency)
    if (d < 0).any():
        raise DisconnectedGraphError(f"{g.describe()} is disconnected; distance matrix undefined")
    return d


def distance_matrix(g: Graph) -> ExactMatrix:
    return ExactMatrix.from_array(distance_array(g))


def transmission(g: Graph) -> ExactMatrix:
    sums = distance_array(g).sum(axis=1)
    return ExactMatrix.from_array(np.diag(sums))


def distance_laplacian(g: Graph) -> ExactMatrix:
    d = distance_array(g)
    return ExactMatrix.from_array(np.diag(d.sum(axis=1)) - d)


MATRIX_KINDS = {
    "d": ("distance", distance_matrix),
    "dl": ("distance-laplacian", distance_laplacian),
}


def graph_matrix(g: Graph, kind: str) -> ExactMatrix:
    try:
        return MATRIX_KINDS[kind][1](g)
    except KeyError:
        raise InvalidParameterError(f"unknown matrix kind {kind!r}; expected d or dl") from None
