from fractions import Fraction

import pytest
from oracles import char_poly_oracle, padd as _padd
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_lines.linalg import (
    apply_frame_operator,
    char_poly,
    frame_operator,
    gram_matrix,
    identity,
    inner_product,
    is_squarefree,
    mat_mul,
    newton_polygon,
    padic_spectrum,
    poly_degree,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_mul,
    poly_normalize,
    rational_roots,
    squarefree_decomposition,
    squarefree_part,
    sup_norm,
    trace,
    trace_of_square,
)
from padic_lines.padic import PadicAbs, Prime, abs_p, valuation

P2, P3, P5, P7 = Prime(2), Prime(3), Prime(5), Prime(7)

F = Fraction
E1 = (F(1), F(0))
E2 = (F(0), F(1))
WORKED_PAIR = ((F(3, 5), F(4, 5)), (F(1), F(0)))

small_fraction = st.fractions(min_value=-8, max_value=8, max_denominator=6)


def vectors_strategy(max_d=4, max_n=5):
    return st.integers(1, max_d).flatmap(
        lambda d: st.lists(
            st.tuples(*[small_fraction] * d), min_size=1, max_size=max_n
        )
    )


# ---------------------------------------------------------------------------
# vectors, frame and Gram operators, traces
# ---------------------------------------------------------------------------


class TestInnerProduct:
    def test_orthogonal_basis(self):
        assert inner_product(E1, E2) == 0

    def test_unit_self_product(self):
        v = (F(3, 5), F(4, 5))
        assert inner_product(v, v) == 1

    def test_cross_term(self):
        assert inner_product(E1, (F(3, 5), F(4, 5))) == F(3, 5)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length mismatch"):
            inner_product(E1, (F(1), F(0), F(0)))

    @given(
        x=st.tuples(small_fraction, small_fraction, small_fraction),
        y=st.tuples(small_fraction, small_fraction, small_fraction),
        c=small_fraction,
    )
    def test_bilinear_symmetric(self, x, y, c):
        assert inner_product(x, y) == inner_product(y, x)
        scaled = tuple(c * e for e in x)
        assert inner_product(scaled, y) == c * inner_product(x, y)


class TestSupNorm:
    def test_zero_vector(self):
        assert sup_norm((F(0), F(0)), P3) == PadicAbs.ZERO

    def test_fifths(self):
        assert sup_norm((F(3, 5), F(4, 5)), P5) == PadicAbs(1)

    def test_units(self):
        assert sup_norm((F(1), F(1)), P2) == PadicAbs(0)

    @given(
        x=st.tuples(small_fraction, small_fraction, small_fraction),
        y=st.tuples(small_fraction, small_fraction, small_fraction),
        p=st.sampled_from([P2, P3, P5, P7]),
    )
    def test_cauchy_schwarz(self, x, y, p):
        assert abs_p(inner_product(x, y), p) <= sup_norm(x, p) * sup_norm(y, p)


class TestFrameOperator:
    def test_standard_basis(self):
        assert frame_operator([E1, E2]) == identity(2)

    def test_rank_one(self):
        assert frame_operator([E1]) == ((F(1), F(0)), (F(0), F(0)))

    def test_worked_pair(self):
        assert frame_operator(WORKED_PAIR) == (
            (F(34, 25), F(12, 25)),
            (F(12, 25), F(16, 25)),
        )

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            frame_operator([E1, (F(1), F(0), F(0))])

    @given(vs=vectors_strategy(), data=st.data())
    def test_matrix_matches_direct_application(self, vs, data):
        d = len(vs[0])
        x = data.draw(st.tuples(*[small_fraction] * d))
        s = frame_operator(vs)
        applied = tuple(
            sum((s[i][j] * x[j] for j in range(d)), F(0)) for i in range(d)
        )
        assert applied == apply_frame_operator(vs, x)


class TestGramAndTraces:
    def test_gram_standard_basis(self):
        assert gram_matrix([E1, E2]) == identity(2)

    def test_gram_worked_pair(self):
        assert gram_matrix(WORKED_PAIR) == ((F(1), F(3, 5)), (F(3, 5), F(1)))

    def test_gram_singleton(self):
        assert gram_matrix([(F(3, 5), F(4, 5))]) == ((F(1),),)

    def test_trace_identity_matrix(self):
        assert trace(identity(4)) == 4

    def test_trace_worked_frame(self):
        assert trace(frame_operator(WORKED_PAIR)) == 2

    def test_trace_of_square_worked_gram(self):
        assert trace_of_square(gram_matrix(WORKED_PAIR)) == F(68, 25)

    def test_non_square_rejected(self):
        with pytest.raises(ValueError, match="not square"):
            trace(((F(1), F(2)),))

    @given(vs=vectors_strategy())
    def test_trace_identities(self, vs):
        s = frame_operator(vs)
        g = gram_matrix(vs)
        assert trace(s) == sum(inner_product(v, v) for v in vs)
        assert trace_of_square(s) == sum(
            inner_product(u, v) ** 2 for u in vs for v in vs
        )
        # S = T T^t and G = T^t T share their nonzero spectrum
        assert trace(s) == trace(g)
        assert trace_of_square(s) == trace_of_square(g)
        s3 = mat_mul(s, mat_mul(s, s))
        g3 = mat_mul(g, mat_mul(g, g))
        assert trace(s3) == trace(g3)


# ---------------------------------------------------------------------------
# characteristic polynomial against a cofactor-expansion oracle
# ---------------------------------------------------------------------------




class TestCharPoly:
    def test_identity(self):
        assert char_poly(identity(2)) == (F(1), F(-2), F(1))

    def test_involution(self):
        swap = ((F(0), F(1)), (F(1), F(0)))
        assert char_poly(swap) == (F(-1), F(0), F(1))

    def test_worked_frame(self):
        assert char_poly(frame_operator(WORKED_PAIR)) == (F(16, 25), F(-2), F(1))

    def test_dimension_cap(self):
        with pytest.raises(ValueError, match="dimension cap"):
            char_poly(identity(3), max_dim=2)

    @given(
        d=st.integers(1, 4),
        data=st.data(),
    )
    def test_against_cofactor_oracle(self, d, data):
        rows = data.draw(
            st.lists(st.tuples(*[small_fraction] * d), min_size=d, max_size=d)
        )
        m = tuple(rows)
        assert char_poly(m) == char_poly_oracle(m)


# ---------------------------------------------------------------------------
# polynomial utilities
# ---------------------------------------------------------------------------

poly_strategy = st.lists(small_fraction, min_size=1, max_size=6).map(poly_normalize)


class TestPolyUtilities:
    @given(f=poly_strategy, g=poly_strategy)
    def test_divmod_reconstructs(self, f, g):
        if not g:
            return
        q, r = poly_divmod(f, g)
        assert poly_normalize(_padd(poly_mul(q, g), r)) == f
        assert poly_degree(r) < poly_degree(g)

    @given(f=poly_strategy, g=poly_strategy)
    def test_gcd_divides_both(self, f, g):
        if not f or not g:
            return
        h = poly_gcd(f, g)
        assert not poly_divmod(f, h)[1]
        assert not poly_divmod(g, h)[1]

    def test_squarefree_examples(self):
        assert not is_squarefree((F(1), F(-2), F(1)))  # (x-1)^2
        assert is_squarefree((F(-1), F(0), F(1)))  # x^2 - 1
        assert is_squarefree(char_poly(frame_operator(WORKED_PAIR)))

    def test_squarefree_zero_rejected(self):
        with pytest.raises(ValueError):
            is_squarefree(())

    @given(f=poly_strategy)
    def test_yun_reconstructs(self, f):
        if poly_degree(f) < 1:
            return
        parts = squarefree_decomposition(f)
        rebuilt = (f[-1],)
        for a, k in parts:
            assert is_squarefree(a)
            for _ in range(k):
                rebuilt = poly_mul(rebuilt, a)
        assert rebuilt == f


class TestRationalRoots:
    def test_double_root(self):
        assert rational_roots((F(1), F(-2), F(1))) == [(F(1), 2)]

    def test_worked_quadratic(self):
        # 25x^2 - 50x + 16 has discriminant 2500 - 1600 = 900, roots (50 +- 30)/50
        assert rational_roots((F(16, 25), F(-2), F(1))) == [(F(2, 5), 1), (F(8, 5), 1)]

    def test_irrational(self):
        assert rational_roots((F(-5), F(0), F(1))) == []

    def test_zero_roots_counted(self):
        assert rational_roots((F(0), F(0), F(1), F(1))) == [(F(-1), 1), (F(0), 2)]

    def test_zero_poly_rejected(self):
        with pytest.raises(ValueError):
            rational_roots(())

    @given(
        roots=st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=4)
    )
    def test_recovers_planted_roots(self, roots):
        f = (F(1),)
        expected: dict[Fraction, int] = {}
        for r in roots:
            f = poly_mul(f, (-r, F(1)))
            expected[r] = expected.get(r, 0) + 1
        assert rational_roots(f) == sorted(expected.items())


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------


class TestNewtonPolygon:
    def test_eisenstein(self):
        np = newton_polygon((F(-5), F(0), F(1)), P5)
        assert np.segments == ((F(-1, 2), 2),)
        assert np.root_valuations() == ((F(1, 2), 2),)
        assert np.zero_roots == 0

    def test_worked_quadratic_hull(self):
        # points (0,-2), (1,0), (2,0): the middle point lies above the chord,
        # so a single slope-1 segment certifies two valuation -1 roots,
        # matching the rational roots 8/5 and 2/5
        np = newton_polygon((F(16, 25), F(-2), F(1)), P5)
        assert np.segments == ((F(1), 2),)
        assert np.root_valuations() == ((F(-1), 2),)

    def test_unit_roots(self):
        np = newton_polygon((F(-1), F(0), F(1)), P7)
        assert np.segments == ((F(0), 2),)

    def test_zero_roots_split_off(self):
        np = newton_polygon((F(0), F(1), F(1)), P5)
        assert np.zero_roots == 1
        assert np.segments == ((F(0), 1),)

    def test_three_distinct_valuations(self):
        f = (F(1),)
        for r in (F(1), F(5), F(1, 5)):
            f = poly_mul(f, (-r, F(1)))
        np = newton_polygon(f, P5)
        assert np.root_valuations() == ((F(1), 1), (F(0), 1), (F(-1), 1))

    def test_zero_poly_rejected(self):
        with pytest.raises(ValueError):
            newton_polygon((), P5)

    @given(f=poly_strategy, p=st.sampled_from([P2, P3, P5]))
    def test_hull_invariants(self, f, p):
        if poly_degree(f) < 1:
            return
        np = newton_polygon(f, p)
        slopes = [s for s, _ in np.segments]
        assert slopes == sorted(set(slopes))
        assert sum(l for _, l in np.segments) == poly_degree(f) - np.zero_roots
        deflated_constant = next(c for c in f if c != 0)
        total_rise = sum(s * l for s, l in np.segments)
        assert total_rise == valuation(f[-1], p) - valuation(deflated_constant, p)

    @given(f=poly_strategy, p=st.sampled_from([P2, P3, P5]))
    def test_rational_roots_appear_as_slopes(self, f, p):
        if poly_degree(f) < 1:
            return
        np = newton_polygon(f, p)
        slopes = {s for s, _ in np.segments}
        for r, _ in rational_roots(f):
            if r == 0:
                continue
            assert -valuation(r, p) in slopes


# ---------------------------------------------------------------------------
# the p-adic spectrum ladder
# ---------------------------------------------------------------------------


class TestPadicSpectrum:
    def test_sqrt_two_exists_in_q7(self):
        spec = padic_spectrum((F(-2), F(0), F(1)), P7)
        assert spec.fully_in_qp and not spec.fully_rational
        assert len(spec.witnessed) == 2
        for w in spec.witnessed:
            assert w.valuation == 0
            assert (w.residue * w.residue - 2) % 7**64 == 0

    def test_sqrt_two_missing_in_q5(self):
        # 2 is not a quadratic residue mod 5: no admissible residue class
        spec = padic_spectrum((F(-2), F(0), F(1)), P5)
        assert spec.excluded == ((F(0), 2),)
        assert spec.proven_outside_qp

    def test_sqrt_two_ramified_at_2(self):
        spec = padic_spectrum((F(-2), F(0), F(1)), P2)
        assert spec.excluded == ((F(1, 2), 2),)

    def test_mixed_rational_and_witnessed(self):
        f = poly_mul((F(-2), F(0), F(1)), (F(-3), F(1)))
        spec = padic_spectrum(f, P7)
        assert spec.rational == ((F(3), 1),)
        assert len(spec.witnessed) == 2
        assert spec.fully_in_qp

    def test_unresolved_repeated_residue(self):
        # x^2 + x + 1 reduces to (x - 1)^2 mod 3; the simple-root criterion
        # cannot decide (the true roots generate a ramified extension)
        spec = padic_spectrum((F(1), F(1), F(1)), P3)
        assert spec.unresolved == ((F(0), 2),)
        assert not spec.fully_in_qp and not spec.proven_outside_qp

    def test_repeated_rational_root(self):
        f = poly_mul((F(-1), F(1)), (F(-1), F(1)))
        spec = padic_spectrum(f, P5)
        assert spec.rational == ((F(1), 2),)
        assert spec.fully_rational

    @given(
        f=st.lists(small_fraction, min_size=2, max_size=5).map(poly_normalize),
        p=st.sampled_from([P2, P3, P5, P7]),
    )
    @settings(max_examples=60)
    def test_root_accounting_balances(self, f, p):
        if poly_degree(f) < 1:
            return
        spec = padic_spectrum(f, p, precision=16)
        accounted = (
            sum(m for _, m in spec.rational)
            + sum(w.multiplicity for w in spec.witnessed)
            + sum(c for _, c in spec.unresolved)
            + sum(c for _, c in spec.excluded)
        )
        assert accounted == poly_degree(f)
