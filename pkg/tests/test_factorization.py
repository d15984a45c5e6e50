import random
from fractions import Fraction

from stablespan.corpus import (
    FIXTURES,
    bowtie_graph,
    complete_graph,
    path_graph,
    random_constructed,
    star_graph,
)
from stablespan.factorization import LinearFactorization, factor_from_trace, verify_factorization
from stablespan.polynomials import LinearForm, Polynomial
from stablespan.recognition import recognize
from stablespan.spanning import vertex_span_poly

F = Fraction


def factorize(g):
    result = recognize(g)
    assert result.accepted
    return factor_from_trace(result.trace)


class TestFixtures:
    def test_unit_c4(self):
        f = factorize(FIXTURES["c4_unit"])
        assert f.constant == 1
        forms = sorted(f.factors, key=lambda lf: lf.coefficients)
        assert forms[0].coefficients == ((0, F(1)), (2, F(1)))
        assert forms[1].coefficients == ((1, F(1)), (3, F(1)))

    def test_weighted_path(self):
        f = factorize(path_graph([F(2), F(5, 3)]))
        assert f.constant == F(10, 3)
        assert len(f.factors) == 1
        assert f.factors[0].coefficients == ((1, F(1)),)

    def test_star_center_squared(self):
        f = factorize(star_graph(3))
        assert f.constant == 1
        assert [lf.coefficients for lf in f.factors] == [((0, F(1)),), ((0, F(1)),)]

    def test_unit_k4_expands_to_sixteen_trees(self):
        g = complete_graph(4)
        f = factorize(g)
        assert verify_factorization(g, f)
        assert f.expand(4) == vertex_span_poly(g)

    def test_k2_no_factors(self):
        f = factorize(FIXTURES["c4_unit"])  # smoke for tuple type
        assert isinstance(f.factors, tuple)
        f2 = factorize(path_graph([F(7, 2)]))
        assert f2.constant == F(7, 2)
        assert f2.factors == ()

    def test_sign_flipped_edge_constant(self):
        g = path_graph([-5])
        f = factorize(g)
        assert f.constant == -5
        assert verify_factorization(g, f)

    def test_all_negative_triangle(self):
        g = FIXTURES["mixed_sign_bowtie"]
        f = factorize(g)
        assert verify_factorization(g, f)


class TestVerification:
    def test_corrupted_factor_detected(self):
        g = FIXTURES["c4_unit"]
        f = factorize(g)
        bumped = list(f.factors)
        coeffs = dict(bumped[0].coefficients)
        first = next(iter(coeffs))
        coeffs[first] += 1
        bumped[0] = LinearForm.of(coeffs)
        assert not verify_factorization(g, LinearFactorization(f.constant, tuple(bumped)))

    def test_corrupted_constant_detected(self):
        g = FIXTURES["c4_unit"]
        f = factorize(g)
        assert not verify_factorization(g, LinearFactorization(f.constant * 2, f.factors))


class TestProperties:
    def test_random_constructed_graphs(self):
        rng = random.Random(14)
        for _ in range(120):
            g = random_constructed(rng, rng.randint(1, 8))
            f = factorize(g)
            assert len(f.factors) == max(g.n - 2, 0)
            assert all(c >= 0 for lf in f.factors for _, c in lf.coefficients)
            assert f.constant > 0
            assert verify_factorization(g, f)

    def test_block_split_composition(self):
        # factoring the bowtie equals factoring its two triangles and gluing
        g = bowtie_graph()
        f = factorize(g)
        whole = f.expand(g.n)
        tri = complete_graph(3)
        left = factorize(tri).expand(3)
        right_terms = {
            tuple(sorted((v + 2, e) for v, e in mono)): c
            for mono, c in factorize(tri).expand(3).terms.items()
        }
        right = Polynomial(right_terms, 5)
        lifted = Polynomial(left.terms, 5)
        assert whole == lifted * right * Polynomial.variable(2, 5)
