import numpy as np
import pytest

from distspec import graphs
from distspec.errors import DisconnectedGraphError, InvalidInputError, InvalidParameterError
from distspec.linalg import float_eigenvalues


def D(g):
    return graphs.distance_array(g)


# -- constructors ------------------------------------------------------------


def test_cycle_small():
    assert graphs.cycle(3).num_edges == 3
    assert D(graphs.cycle(4))[0, 2] == 2
    assert set(D(graphs.cycle(6)).max(axis=1)) == {3}
    assert graphs.cycle(5).edges() == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]


def test_cycle_rejects_short():
    with pytest.raises(InvalidParameterError, match="n must be >= 3: C_n undefined"):
        graphs.cycle(2)


@pytest.mark.parametrize("bad", [2.0, "3", True, None])
def test_non_integer_parameters(bad):
    with pytest.raises(InvalidParameterError, match="must be an integer"):
        graphs.cycle(bad)


def test_basic_families():
    assert graphs.complete(4).num_edges == 6
    assert graphs.complete_bipartite(1, 1) == graphs.complete(2)
    e = graphs.empty_graph(3)
    assert e.num_edges == 0 and not e.is_connected()
    assert graphs.empty_graph(1).is_connected()
    for ctor, args in [(graphs.empty_graph, (0,)), (graphs.complete, (0,)), (graphs.complete_bipartite, (0, 2)),
                       (graphs.complete_bipartite, (2, 0))]:
        with pytest.raises(InvalidParameterError):
            ctor(*args)


def test_union_and_join():
    assert graphs.join(graphs.empty_graph(1), graphs.cycle(3)) == graphs.complete(4)
    k5 = graphs.join(graphs.complete_bipartite(1, 1), graphs.cycle(3))
    assert k5 == graphs.complete(5) and k5.num_edges == 10
    u = graphs.union(graphs.cycle(3), graphs.cycle(3))
    assert (u.n, u.num_edges, u.is_connected()) == (6, 6, False)
    assert u.adjacency[3:, 3:].sum() == 6  # second copy shifted by 3


def test_wheels():
    assert graphs.generalized_wheel(1, 3) == graphs.complete(4)
    g = graphs.egw(2, 2, 3)
    assert g.n == 7
    assert not g.adjacency[:4, :4].any()
    assert graphs.egw(1, 4, 6) == graphs.generalized_wheel(4, 6)
    assert graphs.egw(3, 2, 5).n == 3 * 2 + 5
    with pytest.raises(InvalidParameterError):
        graphs.generalized_wheel(0, 3)
    with pytest.raises(InvalidParameterError):
        graphs.egw(0, 1, 3)


def test_egw_is_wider_wheel():
    # The a empty graphs have no edges between them, so EGW(a,m,n) = W_{am,n}.
    assert graphs.egw(3, 2, 6) == graphs.generalized_wheel(6, 6)


def test_dumbbells():
    g = graphs.dumbbell(1, 3)
    assert g.n == 8 and g.num_edges == 13
    assert (g.degrees() == [4, 3, 3, 3, 4, 3, 3, 3]).all()
    d = D(graphs.dumbbell(2, 3))
    assert graphs.dumbbell(2, 3).n == 10
    assert d[2, 7] == 3  # cycle vertex of copy 1 to cycle vertex of copy 2
    assert graphs.dumbbell(4, 3).n == 14
    with pytest.raises(InvalidParameterError):
        graphs.dumbbell(1, 2)


def test_kpp():
    g = graphs.kpp_join_cycle(2, 4)
    assert g.n == 8
    assert not g.adjacency[:2, :2].any() and g.adjacency[:2, 2:4].all()


def test_build_family():
    assert graphs.build_family("wheel", m=4, n=3) == graphs.generalized_wheel(4, 3)
    with pytest.raises(InvalidParameterError, match="unknown family"):
        graphs.build_family("star", n=3)
    with pytest.raises(InvalidParameterError, match="missing"):
        graphs.build_family("egw", m=1, n=3)
    with pytest.raises(InvalidParameterError, match="unexpected"):
        graphs.build_family("kpp", p=1, n=3, m=2)


def test_graph_validation():
    with pytest.raises(InvalidInputError, match="self-loops"):
        graphs.Graph(np.eye(2, dtype=bool))
    with pytest.raises(InvalidInputError, match="symmetric"):
        graphs.Graph(np.array([[0, 1], [0, 0]], dtype=bool))
    with pytest.raises(InvalidInputError, match="square"):
        graphs.Graph(np.zeros((2, 3), dtype=bool))
    with pytest.raises(InvalidInputError, match="self-loop"):
        graphs.Graph.from_edges(3, [(1, 1)])
    g = graphs.cycle(4)
    with pytest.raises(ValueError):
        g.adjacency[0, 1] = False


def test_describe_and_labels():
    g = graphs.dumbbell(2, 5)
    assert g.describe() == "dumbbell(m=2,n=5)"
    assert dict(g.params) == {"m": 2, "n": 5}
    assert graphs.union(g, g).describe() == "graph(n=28)"


# -- matrices ----------------------------------------------------------------


def test_distance_matrix_examples():
    assert graphs.distance_matrix(graphs.complete(3)).rows == ((0, 1, 1), (1, 0, 1), (1, 1, 0))
    d = D(graphs.generalized_wheel(4, 3))
    assert d.max() == 2
    assert (d[:4, :4] == 2 * (1 - np.eye(4))).all()
    with pytest.raises(DisconnectedGraphError):
        graphs.distance_matrix(graphs.empty_graph(2))


def test_transmission_and_laplacian():
    assert graphs.transmission(graphs.complete(4)).rows == graphs.ExactMatrix.identity(4).scale(3).rows
    assert float_eigenvalues(graphs.distance_laplacian(graphs.complete(4))) == pytest.approx([0, 4, 4, 4])
    assert graphs.distance_laplacian(graphs.cycle(4)).row_sums() == (0, 0, 0, 0)
    with pytest.raises(DisconnectedGraphError):
        graphs.distance_laplacian(graphs.union(graphs.cycle(3), graphs.cycle(3)))
    with pytest.raises(InvalidParameterError):
        graphs.graph_matrix(graphs.cycle(3), "a")


def _family_graphs(limit=8):
    for m in range(1, limit + 1):
        for n in range(3, limit + 1):
            yield graphs.generalized_wheel(m, n)
            yield graphs.dumbbell(m, n)
            yield graphs.egw(2, m, n)
            yield graphs.kpp_join_cycle(m, n)


def test_distance_invariants_on_families():
    for g in _family_graphs():
        d = D(g)
        assert (d == d.T).all() and (np.diag(d) == 0).all() and (d >= 0).all()
        # d(i,j) <= d(i,k) + d(k,j) for every k
        assert (d[:, None, :] <= d[:, :, None] + d[None, :, :]).all(), g.describe()
        assert graphs.distance_matrix(g).trace() == 0
        L = graphs.distance_laplacian(g)
        assert L.is_symmetric()
        assert L.matvec([1] * g.n) == (0,) * g.n


def test_egw_reduces_to_wheel():
    for m in range(1, 9):
        for n in range(3, 9):
            assert graphs.egw(1, m, n) == graphs.generalized_wheel(m, n)


def test_dumbbell_copy_swap_is_automorphism():
    for m in range(1, 9):
        for n in range(3, 9):
            g = graphs.dumbbell(m, n)
            assert g.relabeled(graphs.dumbbell_swap(m, n)) == g


def test_matches_networkx_distances():
    nx = pytest.importorskip("networkx")
    for g in [graphs.dumbbell(3, 7), graphs.kpp_join_cycle(4, 6), graphs.egw(2, 3, 9)]:
        G = nx.from_numpy_array(g.adjacency.astype(int))
        ref = nx.floyd_warshall_numpy(G).astype(int)
        assert (D(g) == ref).all()


# -- ExactMatrix -------------------------------------------------------------


def test_exact_matrix_ops():
    a = graphs.ExactMatrix(((1, 2), (3, 4)))
    b = graphs.ExactMatrix.ones(2)
    assert (a + b).rows == ((2, 3), (4, 5))
    assert (a - b).rows == ((0, 1), (2, 3))
    assert a.transpose().rows == ((1, 3), (2, 4))
    assert a.trace() == 5 and a.row_sums() == (3, 7) and a.max_abs_row_sum() == 7
    assert a[1, 0] == 3 and not a.is_symmetric()
    assert a.matvec((1, -1)) == (-1, -1)
    big = graphs.ExactMatrix(((2**80, 0), (0, 1)))
    assert not big.fits_int64() and a.fits_int64()
    assert graphs.ExactMatrix.from_array(np.array([[1, 2], [2, 1]])).is_symmetric()
    with pytest.raises(InvalidInputError):
        graphs.ExactMatrix(((1, 2),))
    with pytest.raises(InvalidInputError):
        graphs.ExactMatrix.from_array(np.array([[0.5]]))
