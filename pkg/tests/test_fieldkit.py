from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oracles import elements, q_matrices, sympy_rank
from relcalc.fieldkit import (
    GF,
    DimensionMismatch,
    FieldMismatch,
    Matrix,
    NotASubspace,
    Q,
    Qi,
    Subspace,
    field_from_tag,
    intersect,
    kernel,
    quotient_dim,
    rref,
    solve,
    span,
    subspace_sum,
)

E1, E2 = (1, 0), (0, 1)


def sub(field, *vectors, n=None):
    return span(field, vectors, n)


class TestScalars:
    def test_gf_reduces_and_inverts(self):
        f = GF(7)
        assert f(-1) == 6
        assert f.div(3, 5) == 2  # 5 * 2 = 10 = 3 mod 7

    def test_gf_rejects_composite(self):
        with pytest.raises(ValueError):
            GF(6)

    def test_qi_arithmetic(self):
        a = Qi.parse("1/2+3i")
        b = Qi.parse("-i")
        assert a * b == Qi.parse("3-1/2i")
        assert (a / a) == Qi.one
        assert Qi.conj(a) == Qi.parse("1/2-3i")

    @pytest.mark.parametrize("text", ["1/2", "-3", "0", "12/8"])
    def test_q_round_trip(self, text):
        assert Q.parse(Q.format(Q.parse(text))) == Q.parse(text)

    @pytest.mark.parametrize("text", ["i", "-i", "2/3-1/5i", "4+i"])
    def test_qi_round_trip(self, text):
        assert Qi.parse(Qi.format(Qi.parse(text))) == Qi.parse(text)

    def test_q_refuses_complex(self):
        with pytest.raises(FieldMismatch):
            Q(Qi.parse("1+i"))

    def test_tags(self):
        assert field_from_tag("GF", 3) == GF(3)
        assert field_from_tag("Q") == Q
        with pytest.raises(ValueError):
            field_from_tag("R")


class TestRref:
    def test_proportional_rows(self):
        canon, rank, piv = rref(Matrix.from_rows(Q, [[2, 4], [1, 2]]))
        assert rank == 1 and canon.rows == ((1, 2),) and piv == (0,)

    def test_identity_fixed(self):
        i2 = Matrix.identity(Q, 2)
        canon, rank, _ = rref(i2)
        assert rank == 2 and canon == i2

    def test_nilpotent_gf2(self):
        canon, rank, _ = rref(Matrix.from_rows(GF(2), [[0, 1], [0, 0]]))
        assert rank == 1 and canon.rows == ((0, 1),)

    @given(q_matrices(3, 4))
    def test_rank_matches_sympy(self, m):
        assert rref(m)[1] == sympy_rank(m)

    @given(q_matrices(3, 4))
    def test_rref_idempotent(self, m):
        canon, _, _ = rref(m)
        assert rref(canon)[0] == canon


class TestKernel:
    def test_identity(self):
        assert kernel(Matrix.identity(Q, 2)).dim == 0

    def test_nilpotent(self):
        assert kernel(Matrix.from_rows(Q, [[0, 1], [0, 0]])) == sub(Q, E1)

    def test_zero_matrix(self):
        assert kernel(Matrix.zeros(Q, 2, 2)) == Subspace.full(Q, 2)

    @given(q_matrices(3, 4))
    def test_rank_nullity(self, m):
        k = kernel(m)
        assert m.rank() + k.dim == m.ncols
        for v in k.basis:
            assert all(x == 0 for x in m @ v)

    @given(q_matrices(3, 3))
    def test_nullspace_matches_sympy(self, m):
        sm = sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in r] for r in m.rows])
        assert kernel(m).dim == len(sm.nullspace())

    def test_solve_particular(self):
        m = Matrix.from_rows(Q, [[1, 1]])
        assert solve(m, [3]) == (3, 0)
        assert solve(Matrix.from_rows(Q, [[1, 0], [1, 0]]), [1, 2]) is None


class TestSpan:
    def test_collinear(self):
        s = sub(Q, (1, 0), (2, 0))
        assert s.dim == 1 and s == sub(Q, E1)

    def test_empty(self):
        assert span(Q, [], 2).dim == 0

    def test_empty_needs_ambient(self):
        with pytest.raises(DimensionMismatch):
            span(Q, [])

    def test_mixed_lengths(self):
        with pytest.raises(DimensionMismatch):
            span(Q, [(1, 0), (1, 0, 0)])

    def test_ex31_pairs_dim_3(self):
        s = span(Q, [(0, 0, 1, 0), (1, 0, 0, 0), (0, 1, 1, 0)])
        assert s.dim == 3

    @given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4), st.randoms())
    def test_canonical_under_regeneration(self, vecs, rnd):
        s = span(Q, vecs)
        # a shuffled generating set with extra combinations has the same canonical basis
        mixed = list(vecs) + [tuple(a + 2 * b for a, b in zip(vecs[0], vecs[-1]))]
        rnd.shuffle(mixed)
        assert span(Q, mixed).basis == s.basis


class TestSumIntersect:
    def test_disjoint_axes(self):
        assert intersect(sub(Q, E1), sub(Q, E2)).dim == 0

    def test_q3_planes(self):
        a = sub(Q, (1, 0, 0), (0, 1, 0))
        b = sub(Q, (0, 1, 0), (0, 0, 1))
        assert a & b == sub(Q, (0, 1, 0))

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionMismatch):
            sub(Q, E1) & sub(Q, (1, 0, 0))

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatch):
            sub(Q, E1) + sub(GF(3), E1)

    @pytest.mark.parametrize("p", [2, 3])
    @given(data=st.data())
    def test_gf_against_enumeration(self, p, data):
        vec = st.lists(st.integers(0, p - 1), min_size=3, max_size=3)
        us = data.draw(st.lists(vec, max_size=3))
        vs = data.draw(st.lists(vec, max_size=3))
        f = GF(p)
        u, v = span(f, us, 3), span(f, vs, 3)
        eu, ev = elements(p, us, 3), elements(p, vs, 3)
        assert elements(p, list((u & v).basis), 3) == eu & ev
        assert elements(p, list((u + v).basis), 3) == elements(p, us + vs, 3)

    @given(data=st.data())
    def test_modular_law_all_fields(self, data):
        field = data.draw(st.sampled_from([Q, Qi, GF(2), GF(5)]))
        ent = st.integers(-2, 2)
        us = data.draw(st.lists(st.lists(ent, min_size=4, max_size=4), max_size=4))
        vs = data.draw(st.lists(st.lists(ent, min_size=4, max_size=4), max_size=4))
        u, v = span(field, us, 4), span(field, vs, 4)
        assert subspace_sum(u, v).dim + intersect(u, v).dim == u.dim + v.dim
        assert u & u == u
        assert (u & v) <= u and u <= u + v

    def test_qi_intersection(self):
        i = Qi.parse("i")
        a = span(Qi, [(1, i)])
        b = span(Qi, [(1, 0), (0, 1)])
        assert a & b == a
        assert (a & span(Qi, [(1, Qi.parse("-i"))])).dim == 0


class TestQuotient:
    def test_line_in_plane(self):
        assert quotient_dim(Subspace.full(Q, 2), sub(Q, E1)) == 1

    def test_self(self):
        u = sub(Q, (1, 2, 3))
        assert quotient_dim(u, u) == 0

    def test_not_contained(self):
        with pytest.raises(NotASubspace):
            quotient_dim(sub(Q, E1), sub(Q, E2))


def test_matrix_product_and_conj_transpose():
    m = Matrix.from_rows(Qi, [["1", "i"], ["0", "2"]])
    ct = m.conj_transpose()
    assert ct[0, 1] == Qi.zero and ct[1, 0] == Qi.parse("-i")
    prod = m @ Matrix.identity(Qi, 2)
    assert prod == m
    assert (Matrix.from_rows(Q, [[Fraction(1, 2)]]) @ (4,)) == (2,)
