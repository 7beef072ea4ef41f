import itertools

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import gf_relations
from relcalc.chains import (
    ChainTuple,
    NotAChain,
    PreconditionError,
    chain_space,
    chainspace_quotient_dim,
    class_span_dim,
    classify_chain,
    extract_jordan_chain,
    has_singular_chain,
    reduce_chains,
    stable_spaces,
)
from relcalc.fieldkit import GF, DimensionMismatch, Q, Subspace, lincomb, span
from relcalc.fixtures import ex31, n2
from relcalc.pencil import Pencil, to_relation
from relcalc.fieldkit import Matrix
from relcalc.relation import INFINITY, LinearRelation, from_graph, identity, parts, power

E1, E2, Z = (1, 0), (0, 1), (0, 0)


def chain(*entries, field=Q):
    return ChainTuple.of(field, *entries)


def n2_rel():
    return from_graph(n2())


class TestClassify:
    def test_ex31_singular(self):
        cls = classify_chain(ex31(), chain(Z, E1))
        assert cls.is_singular and cls.is_quasi_jordan and not cls.is_jordan

    def test_ex31_not_jordan(self):
        cls = classify_chain(ex31(), chain(E2, E1))
        assert cls.is_quasi_jordan and not cls.is_jordan and not cls.is_singular

    def test_n2_jordan(self):
        cls = classify_chain(n2_rel(), chain(E2, E1))
        assert cls.is_jordan and cls.jordan_level == 1

    def test_broken_chain(self):
        cls = classify_chain(n2_rel(), chain(E1, E2))
        assert not cls.is_chain and not cls.is_quasi_jordan

    def test_chain_without_kernel_tail(self):
        # (e2 | e2) lies in the identity but e2 is not in its kernel
        cls = classify_chain(identity(Q, 2), chain(E2, E2))
        assert cls.is_chain and not cls.is_quasi_jordan

    def test_zero_tuple(self):
        cls = classify_chain(ex31(), chain(Z, Z, Z))
        assert cls.is_chain and cls.is_quasi_jordan and not cls.is_singular

    def test_shifted(self):
        a = from_graph(Matrix.from_rows(Q, [[2, 1], [0, 2]]))
        assert classify_chain(a, chain(E2, E1), lam=2).is_jordan
        assert not classify_chain(a, chain(E2, E1), lam=0).is_quasi_jordan

    def test_infinity(self):
        # chains of a at infinity are chains of its inverse at zero
        cls = classify_chain(ex31(), chain(E1, Z), lam=INFINITY)
        assert cls.is_quasi_jordan

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            classify_chain(ex31(), chain((1, 0, 0)))

    def test_ragged_tuple(self):
        with pytest.raises(DimensionMismatch):
            ChainTuple.of(Q, (1, 0), (1,))


class TestExtract:
    def test_n2(self):
        assert extract_jordan_chain(n2_rel(), E2, 1) == chain(E2, E1)

    def test_degenerate(self):
        assert extract_jordan_chain(identity(Q, 2), Z, 0) == chain(Z)

    def test_ex31_deterministic(self):
        first = extract_jordan_chain(ex31(), E2, 1)
        assert first == extract_jordan_chain(ex31(), E2, 1)
        assert first.head == (0, 1)
        assert first.tail[1] == 0  # tail is a multiple of e1
        assert classify_chain(ex31(), first).is_quasi_jordan

    def test_head_outside(self):
        with pytest.raises(PreconditionError):
            extract_jordan_chain(n2_rel(), E2, 0)

    @given(gf_relations(3, d_max=4), st.data())
    def test_extracted_is_quasi_jordan(self, a, data):
        n = data.draw(st.integers(0, 3))
        kn = parts(power(a, n + 1)).ker
        coeffs = data.draw(st.lists(st.integers(0, 2), min_size=kn.dim, max_size=kn.dim))
        head = lincomb(a.field, coeffs, kn.basis, a.d)
        t = extract_jordan_chain(a, head, n)
        assert t.n == n and t.head == head
        assert classify_chain(a, t).is_quasi_jordan


def random_chains(data, a, n, m):
    kn = parts(power(a, n + 1)).ker
    out = []
    for _ in range(m):
        coeffs = data.draw(st.lists(st.integers(0, a.field.p - 1), min_size=kn.dim, max_size=kn.dim))
        out.append(extract_jordan_chain(a, lincomb(a.field, coeffs, kn.basis, a.d), n))
    return out


class TestClassSpan:
    def test_n2(self):
        assert class_span_dim(n2_rel(), [chain(E2, E1)], 1) == (1, 1)

    def test_ex31(self):
        assert class_span_dim(ex31(), [chain(E2, E1)], 1) == (0, 0)

    def test_empty(self):
        assert class_span_dim(ex31(), [], 1) == (0, 0)

    def test_non_chain(self):
        with pytest.raises(NotAChain):
            class_span_dim(n2_rel(), [chain(E1, E2)], 1)

    @given(gf_relations(3, d_max=4), st.data())
    def test_left_equals_right(self, a, data):
        n = data.draw(st.integers(0, 3))
        chains = random_chains(data, a, n, data.draw(st.integers(1, 3)))
        left, right = class_span_dim(a, chains, n)
        assert left == right

    @given(gf_relations(2, d_max=4), st.data())
    def test_three_way_equivalence(self, a, data):
        n = data.draw(st.integers(0, 3))
        (t,) = random_chains(data, a, n, 1)
        tail_outside = t.tail not in parts(power(a, n)).mul
        head_class = t.head not in parts(power(a, n)).ker
        all_classes = all(t.level(j) not in parts(power(a, j)).ker for j in range(n + 1))
        assert tail_outside == head_class == all_classes
        if head_class:
            assert span(a.field, list(t.entries), a.d).dim == n + 1


def codim_one(data, a: LinearRelation) -> LinearRelation:
    """Random ``c`` inside ``a`` with ``dim(a/c) = 1``."""
    f = a.field
    k = a.dim
    coeffs = data.draw(st.lists(st.integers(0, f.p - 1), min_size=k, max_size=k).filter(any))
    # kernel of the functional ``coeffs`` on the coordinates of a
    pivot = next(i for i, c in enumerate(coeffs) if c)
    vecs = []
    for i, b in enumerate(a.space.basis):
        if i == pivot:
            continue
        r = f.div(coeffs[i], coeffs[pivot])
        vecs.append(tuple(f.sub(x, f.mul(r, y)) for x, y in zip(b, a.space.basis[pivot])))
    return LinearRelation(a.d, Subspace.from_vectors(f, 2 * a.d, vecs))


class TestReduce:
    def test_all_inside_c(self):
        chains = [chain(E2, E1), chain((1, 1), E1)]
        red = reduce_chains(ex31(), n2_rel(), chains)
        assert red.pivot_level is None and red.chains == (chains[0],)

    def test_pivot_subtraction(self):
        chains = [chain((0, 2), E1), chain(E2, Z)]
        red = reduce_chains(ex31(), n2_rel(), chains)
        assert red.order == (1, 0) and red.pivot_level == 1
        (y,) = red.chains
        assert y == chain((0, -1), (-1, 0))
        assert classify_chain(n2_rel(), y).is_quasi_jordan

    def test_single_chain(self):
        assert reduce_chains(ex31(), n2_rel(), [chain(E2, E1)]).chains == ()

    def test_wrong_codimension(self):
        with pytest.raises(PreconditionError):
            reduce_chains(ex31(), ex31(), [chain(E2, E1)])

    def test_non_chain(self):
        with pytest.raises(NotAChain):
            reduce_chains(ex31(), n2_rel(), [chain(E1, E2), chain(E2, E1)])

    @given(gf_relations(3, d_max=4), st.data())
    def test_properties(self, a, data):
        assume(a.dim >= 1)
        c = codim_one(data, a)
        n = data.draw(st.integers(0, 3))
        m = data.draw(st.integers(2, 3))
        chains = random_chains(data, a, n, m)
        red = reduce_chains(a, c, chains)
        assert len(red.chains) == m - 1
        piv = chains[red.order[-1]]
        f = a.field
        for k, y in zip(red.order[:-1], red.chains):
            assert classify_chain(c, y).is_quasi_jordan
            for j in range(n + 1):
                below = span(f, [piv.level(l) for l in range(j + 1)], a.d)
                diff = tuple(f.sub(p, q) for p, q in zip(y.level(j), chains[k].level(j)))
                assert diff in below
        if class_span_dim(a, chains, n)[0] == m:
            assert class_span_dim(c, list(red.chains), n)[0] == m - 1


class TestChainSpace:
    def test_ex31_vs_graph(self):
        a, c = ex31(), n2_rel()
        assert [chainspace_quotient_dim(a, c, m) for m in (1, 2)] == [1, 2]
        assert chain_space(a, 1).dim == 3 and chain_space(c, 2).dim == 2

    def test_equal(self):
        assert all(chainspace_quotient_dim(ex31(), ex31(), m) == 0 for m in (1, 2, 3))

    def test_not_contained(self):
        with pytest.raises(PreconditionError):
            chainspace_quotient_dim(n2_rel(), ex31(), 1)

    def test_bad_m(self):
        with pytest.raises(ValueError):
            chain_space(ex31(), 0)

    @given(gf_relations(2, d_max=2), st.integers(1, 3))
    def test_against_enumeration(self, a, m):
        d = a.d
        pairs = [tuple(v) for v in itertools.product(range(2), repeat=2 * d) if (v[:d], v[d:]) in a]
        count = 0
        for combo in itertools.product(pairs, repeat=m):
            if all(combo[i][d:] == combo[i + 1][:d] for i in range(m - 1)):
                count += 1
        assert 2 ** chain_space(a, m).dim == count

    @given(gf_relations(3, d_max=3), st.data())
    def test_quotient_at_most_m(self, a, data):
        assume(a.dim >= 1)
        c = codim_one(data, a)
        m = data.draw(st.integers(1, 4))
        assert 0 <= chainspace_quotient_dim(a, c, m) <= m


def brute_singular(a: LinearRelation) -> bool:
    """Search every tuple over GF(2) up to length ``2d + 1`` for a nonzero singular chain."""
    d = a.d
    vectors = list(itertools.product(range(2), repeat=d))
    mul = parts(a).mul
    for length in range(1, 2 * d + 2):
        for t in itertools.product(vectors, repeat=length):
            if not any(any(v) for v in t) or t[0] not in mul:
                continue
            if classify_chain(a, ChainTuple(t)).is_quasi_jordan:
                return True
    return False


class TestSingularChains:
    def test_ex31(self):
        assert has_singular_chain(ex31())

    def test_graphs(self):
        assert not has_singular_chain(identity(Q, 2))
        assert not has_singular_chain(n2_rel())

    def test_regular_pencil(self):
        p = Pencil(Matrix.from_rows(Q, [[1, 2], [0, 0]]), Matrix.from_rows(Q, [[0, 1], [1, 0]]))
        assert not has_singular_chain(to_relation(p))

    @given(gf_relations(2, d_max=2))
    def test_against_search(self, a):
        assert has_singular_chain(a) == brute_singular(a)

    @given(gf_relations(3, d_max=4))
    def test_stable_spaces_are_fixed(self, a):
        ker, mul = stable_spaces(a)
        top = parts(power(a, 2 * a.d + 1))
        assert ker == top.ker and mul == top.mul


def test_hats_layout():
    t = chain((1, 2), (3, 4), (5, 6))
    assert t.n == 2 and t.level(0) == (5, 6) and t.level(2) == (1, 2)
    assert t.hats() == [(5, 6, 0, 0), (3, 4, 5, 6), (1, 2, 3, 4)]


def test_gf_chain():
    f = GF(2)
    a = from_graph(n2(f))
    assert classify_chain(a, ChainTuple.of(f, E2, E1)).is_jordan
