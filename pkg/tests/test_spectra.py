from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from distspec import graphs, linalg, spectra
from distspec.errors import InvalidInputError, InvalidParameterError, NotEquitableError
from distspec.spectra import CosTerm, Int, RootOf, Surd


def ints(spectrum):
    return dict(spectrum.integer_counts())


def oracle_roots(g, kind="d"):
    return linalg.integer_roots(linalg.char_poly(graphs.graph_matrix(g, kind)))


# -- value types -------------------------------------------------------------


def test_normalize_examples():
    assert spectra.normalize(Surd(3, 25, 2)) == [Int(-1), Int(4)]
    assert spectra.normalize(CosTerm(-2, 5, 1)) == [CosTerm(-2, 5, 1)]
    assert spectra.normalize(Surd(0, 0, 1)) == [Int(0), Int(0)]
    assert spectra.normalize(Surd(3, 5, 2)) == [Surd(3, 5, 2)]
    # square radicand but odd numerator stays a surd
    assert spectra.normalize(Surd(2, 1, 2)) == [Surd(2, 1, 2)]
    assert spectra.normalize(Surd(3, 25, 2, branch=1)) == [Int(4)]
    assert spectra.normalize(Int(7)) == [Int(7)]


@pytest.mark.parametrize("n,k,value", [(3, 1, -1), (4, 1, 0), (6, 1, 1), (4, 2, -2), (6, 3, -2), (5, 5, 2),
                                       (8, 2, 0), (12, 2, 1), (12, 4, -1), (7, 0, 2), (9, 3, -1)])
def test_cos_term_integral_cases(n, k, value):
    assert CosTerm(0, n, k).normalize() == [Int(value)]
    assert CosTerm(0, n, k).numeric()[0] == pytest.approx(2 * np.cos(2 * np.pi * k / n))


@pytest.mark.parametrize("n,k", [(5, 1), (5, 2), (7, 3), (8, 1), (10, 1), (12, 1), (9, 1)])
def test_cos_term_irrational_cases(n, k):
    assert CosTerm(1, n, k).normalize() == [CosTerm(1, n, k)]


def test_value_validation_and_strings():
    with pytest.raises(InvalidInputError):
        Surd(1, -1)
    with pytest.raises(InvalidInputError):
        Surd(1, 1, 0)
    with pytest.raises(InvalidInputError):
        CosTerm(0, 0, 1)
    assert str(Surd(17, 241, 2)) == "(17+-sqrt(241))/2"
    assert str(CosTerm(-2, 5, 1, -1)) == "-2-2cos(2*1*pi/5)"
    assert CosTerm(0, 5, 4).canonical() == CosTerm(0, 5, 1)
    r = RootOf((1, -3, 0, 1), 0)
    assert r.numeric()[0] ** 3 - 3 * r.numeric()[0] + 1 == pytest.approx(0, abs=1e-12)


def test_integrality_certificate():
    s = spectra.wheel_distance_spectrum(2, 5)
    cert = spectra.spectrum_is_integral(s)
    assert not cert and isinstance(cert.witness, (CosTerm, Surd))
    assert spectra.spectrum_is_integral(spectra.wheel_distance_spectrum(4, 3))


# -- cycle spectra -----------------------------------------------------------


def test_cycle_spectrum():
    assert ints(spectra.cycle_adjacency_spectrum(4)) == {2: 1, 0: 2, -2: 1}
    assert ints(spectra.cycle_adjacency_spectrum(3)) == {2: 1, -1: 2}
    assert ints(spectra.cycle_adjacency_spectrum(6)) == {2: 1, 1: 2, -1: 2, -2: 1}
    for n in range(3, 15):
        s = spectra.cycle_adjacency_spectrum(n)
        adj = graphs.cycle(n).adjacency.astype(float)
        assert s.total == n
        assert s.numeric() == pytest.approx(np.linalg.eigvalsh(adj), abs=1e-10)
        assert s.exact_trace() == 0
    with pytest.raises(InvalidParameterError):
        spectra.cycle_adjacency_spectrum(2)


# -- equitable quotients and block matrices ---------------------------------


def test_equitable_quotient_examples():
    M = graphs.distance_matrix(graphs.generalized_wheel(4, 3))
    P = spectra.EquitablePartition.from_sizes([4, 3])
    assert spectra.equitable_quotient(M, P).rows == ((6, 3), (4, 2))
    one = graphs.ExactMatrix.ones(4) - graphs.ExactMatrix.identity(4)
    assert spectra.equitable_quotient(one, spectra.EquitablePartition.from_sizes([4])).rows == ((3,),)


def test_not_equitable():
    M = graphs.distance_matrix(graphs.cycle(5))
    with pytest.raises(NotEquitableError) as info:
        spectra.equitable_quotient(M, spectra.EquitablePartition.from_sizes([2, 3]))
    assert info.value.block is not None
    with pytest.raises(InvalidInputError):
        spectra.equitable_quotient(M, spectra.EquitablePartition([[0, 1], [1, 2, 3, 4]]))
    with pytest.raises(InvalidInputError):
        spectra.equitable_quotient(M, spectra.EquitablePartition([[0, 1], [2, 3]]))


def test_quotient_eigenvalues_embed_in_spectrum():
    g = graphs.dumbbell(3, 5)
    M = graphs.distance_matrix(g)
    cells = [[0, 1, 2], list(range(3, 8)), [8, 9, 10], list(range(11, 16))]
    B = spectra.equitable_quotient(M, spectra.EquitablePartition(cells))
    full = linalg.float_eigenvalues(M)
    for v, _ in spectra.quotient_eigenvalues(B.rows):
        for x in v.numeric():
            assert min(abs(x - y) for y in full) < 1e-8


def test_lemma3_examples():
    s = spectra.lemma3_spectrum([[2]], [-2], [4])
    assert ints(s) == {6: 1, -2: 3}
    # EGW quotient with a copies: -2 appears a-1 extra times
    a, m, n = 3, 2, 5
    s = spectra.lemma3_spectrum([[2 * m, n], [m, 2 * n - 4]], [-2, 0], [a, 1])
    assert ints(s)[-2] == a - 1
    with pytest.raises(InvalidInputError):
        spectra.lemma3_spectrum([[1, 2]], [0], [1])


def test_block_matrix_layout():
    M = spectra.block_matrix([[1, 2], [2, 3]], [5, 0], [2, 1])
    assert M.rows == ((6, 1, 2), (1, 6, 2), (2, 2, 3))


lemma3_args = st.integers(1, 4).flatmap(lambda k: st.tuples(
    st.lists(st.lists(st.integers(-4, 4), min_size=k, max_size=k), min_size=k, max_size=k),
    st.lists(st.integers(-4, 4), min_size=k, max_size=k),
    st.lists(st.integers(1, 5), min_size=k, max_size=k),
))


@given(lemma3_args)
def test_lemma3_matches_oracle(args):
    s_raw, p, sizes = args
    k = len(p)
    s = [[s_raw[min(i, j)][max(i, j)] for j in range(k)] for i in range(k)]  # symmetric
    spec = spectra.lemma3_spectrum(s, p, sizes)
    M = spectra.block_matrix(s, p, sizes)
    assert spec.total == sum(sizes)
    assert spec.numeric() == pytest.approx(linalg.float_eigenvalues(M), abs=1e-8)
    fac = linalg.integer_roots(linalg.char_poly(M))
    assert Counter(spec.integer_counts()) == Counter(fac.root_multiset())


def test_lemma3_seeded_instances():
    # Deterministic complement to the hypothesis run: 50 seeded instances.
    rng = np.random.default_rng(7)
    for _ in range(50):
        k = int(rng.integers(1, 5))
        a = rng.integers(-4, 5, (k, k))
        s = np.triu(a) + np.triu(a, 1).T
        p = rng.integers(-4, 5, k).tolist()
        sizes = rng.integers(1, 6, k).tolist()
        spec = spectra.lemma3_spectrum(s.tolist(), p, sizes)
        M = spectra.block_matrix(s.tolist(), p, sizes)
        assert spec.numeric() == pytest.approx(linalg.float_eigenvalues(M), abs=1e-8)


# -- family closed forms -----------------------------------------------------


def test_wheel_spectra():
    assert ints(spectra.wheel_distance_spectrum(4, 3)) == {8: 1, 0: 1, -1: 2, -2: 3}
    assert ints(spectra.wheel_distance_spectrum(1, 3)) == {3: 1, -1: 3}
    assert spectra.spectrum_is_integral(spectra.wheel_distance_spectrum(2, 4))
    with pytest.raises(InvalidParameterError):
        spectra.wheel_distance_spectrum(0, 3)


def test_egw_spectra():
    assert ints(spectra.egw_distance_spectrum(2, 2, 3)) == {8: 1, 0: 1, -1: 2, -2: 3}
    for m in range(1, 7):
        for n in range(3, 10):
            assert spectra.egw_distance_spectrum(1, m, n).numeric() == pytest.approx(
                spectra.wheel_distance_spectrum(m, n).numeric())
    assert spectra.spectrum_is_integral(spectra.egw_distance_spectrum(2, 6, 6))


def test_kpp_spectra():
    s = spectra.kpp_join_cycle_distance_spectrum(1, 3)
    assert ints(s) == {4: 1, -1: 4}
    assert Counter(oracle_roots(graphs.complete(5)).root_multiset()) == Counter(ints(s))
    assert spectra.spectrum_is_integral(spectra.kpp_join_cycle_distance_spectrum(4, 6))
    s34 = spectra.kpp_join_cycle_distance_spectrum(3, 4)
    assert ints(s34)[1] == 1 and oracle_roots(graphs.kpp_join_cycle(3, 4)).root_multiset()[1] == 1
    assert "corrected" in s34.tags()


def test_kpp_as_printed_is_one_short():
    for p in range(1, 7):
        for n in range(3, 9):
            printed = spectra.kpp_join_cycle_distance_spectrum(p, n, as_printed=True)
            assert printed.total == 2 * p + n - 1
            assert spectra.kpp_join_cycle_distance_spectrum(p, n).total == 2 * p + n


def test_dumbbell_distance_spectrum():
    s = spectra.dumbbell_distance_spectrum(2, 3)
    want = {-8: 1, -4: 1, -1: 5, 0: 1}
    assert ints(s) == want
    assert [v for v, _ in s.irreducible()] == [Surd(17, 241, 2)]
    fac = oracle_roots(graphs.dumbbell(2, 3))
    assert fac.root_multiset() == want and fac.remainder.coeffs == (12, -17, 1)
    assert spectra.dumbbell_distance_spectrum(4, 3).total == 14


def test_dumbbell_as_printed_range_fails_trace():
    # The k=2..n cosine range double counts -4 and drops a -1 pair.
    printed = spectra.dumbbell_distance_spectrum(2, 3, as_printed=True)
    assert printed.total == 10
    assert printed.exact_trace() == -6
    assert ints(printed) != dict(oracle_roots(graphs.dumbbell(2, 3)).root_multiset())


def test_no_integral_dumbbell_closed_forms():
    for n in (3, 4, 6):
        for m in range(1, 201):
            assert not spectra.spectrum_is_integral(spectra.dumbbell_distance_spectrum(m, n))


def test_dumbbell_dl_spectrum():
    s = spectra.dumbbell_distance_laplacian_spectrum(4, 3)
    want = {0: 1, 21: 1, 29: 3, 25: 3, 24: 4, 33: 1, 26: 1}
    assert ints(s) == want and spectra.spectrum_is_integral(s)
    assert oracle_roots(graphs.dumbbell(4, 3), "dl").root_multiset() == want
    for m in range(1, 7):
        for n in range(3, 9):
            s = spectra.dumbbell_distance_laplacian_spectrum(m, n)
            num = s.numeric()
            assert abs(num[0]) < 1e-12 and num[1] > 1e-6  # simple zero: connected


def test_closed_form_registry():
    assert spectra.has_closed_form("dumbbell", "dl") and not spectra.has_closed_form("wheel", "dl")
    with pytest.raises(InvalidParameterError):
        spectra.closed_form_spectrum("wheel", "dl", m=1, n=3)


# -- invariants over the grid ------------------------------------------------


def _grid():
    for n in range(3, 13):
        for m in range(1, 7):
            yield graphs.generalized_wheel(m, n), "d"
            yield graphs.dumbbell(m, n), "d"
            yield graphs.dumbbell(m, n), "dl"
            for a in (2, 3):
                yield graphs.egw(a, m, n), "d"
        for p in range(1, 7):
            yield graphs.kpp_join_cycle(p, n), "d"


def test_grid_invariants():
    for g, kind in _grid():
        s = spectra.closed_form_spectrum(g.family, kind, **dict(g.params))
        M = graphs.graph_matrix(g, kind)
        assert s.total == g.n, g.describe()
        assert s.exact_trace() == M.trace(), g.describe()
        fac = linalg.integer_roots(linalg.char_poly(M))
        assert Counter(s.integer_counts()) == Counter(fac.root_multiset()), g.describe()
        assert bool(spectra.spectrum_is_integral(s)) == fac.fully_integral, g.describe()
        assert s.numeric() == pytest.approx(linalg.float_eigenvalues(M), abs=1e-8)


def test_exact_trace_rational_and_none():
    s = spectra.Spectrum((spectra.SpectrumEntry(CosTerm(0, 5, 1)),), order=1)
    assert s.exact_trace() is None  # a single irrational cosine is not rational
    s = spectra.Spectrum(tuple(spectra.SpectrumEntry(CosTerm(1, 5, k)) for k in range(5)), order=5)
    assert s.exact_trace() == 5
    s = spectra.Spectrum((spectra.SpectrumEntry(Surd(3, 5, 2), 2),), order=4)
    assert s.exact_trace() == Fraction(6)


def test_merged_presentation():
    s = spectra.kpp_join_cycle_distance_spectrum(1, 3)
    assert [(str(v), k) for v, k in s.merged()] == [("-1", 4), ("4", 1)]
    assert str(s) == "{-1^4, 4}"
