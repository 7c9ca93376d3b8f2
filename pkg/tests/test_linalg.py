import random
from fractions import Fraction

import numpy as np
import pytest

from starcomp import (
    NotAnEigenvalueError,
    Polynomial,
    SingularResolventError,
    adjacency_matrix,
    char_poly,
    complete_graph,
    cycle_graph,
    disjoint_union,
    eig_multiplicity,
    format_rational,
    is_nonmain,
    make_cocktail,
    make_complete_split,
    min_poly,
    parse_rational,
    path_graph,
    rank,
    resolvent_bilinear,
    resolvent_via_minpoly,
)
from starcomp.linalg import identity_matrix, invert_exact

from conftest import leibniz_char_poly, random_graph


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while b.degree >= 0:
        _, r = divmod(a, b)
        a, b = b, r
    lead = a.coeffs[-1]
    return Polynomial([c / lead for c in a.coeffs])


class TestPolynomial:
    def test_repr(self):
        assert str(Polynomial([0, -4, -5, 0, 1])) == "x^4 - 5*x^2 - 4*x"

    def test_eval(self):
        p = Polynomial([1, 2, 3])
        assert p(Fraction(1, 2)) == 1 + 1 + Fraction(3, 4)

    def test_divmod(self):
        p = Polynomial.from_roots([1, 2, 3])
        q, r = divmod(p, Polynomial([-2, 1]))
        assert r.degree < 0
        assert q == Polynomial.from_roots([1, 3])

    def test_rational_roots(self):
        p = Polynomial.from_roots([0, 0, -2, Fraction(1, 2)])
        assert p.rational_roots() == [
            (Fraction(-2), 1),
            (Fraction(0), 2),
            (Fraction(1, 2), 1),
        ]

    def test_factor_rational_residual(self):
        p = Polynomial([-4, -1, 1]) * Polynomial.from_roots([0, -1])  # x^2-x-4 times x(x+1)
        roots, residual = p.factor_rational()
        assert roots == [(Fraction(-1), 1), (Fraction(0), 1)]
        assert residual == Polynomial([-4, -1, 1])

    def test_parse_format_rational(self):
        assert parse_rational("-5/2") == Fraction(-5, 2)
        assert parse_rational(" 3 ") == 3
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(Fraction(-5, 2)) == "-5/2"
        for bad in ("1.5", "x", "", "1/0", "sqrt(2)"):
            with pytest.raises(ValueError):
                parse_rational(bad)


class TestCharPoly:
    def test_k2(self):
        assert char_poly(adjacency_matrix(complete_graph(2))) == Polynomial([-1, 0, 1])

    def test_octahedron_vs_leibniz(self):
        adj = adjacency_matrix(make_cocktail(3))
        assert char_poly(adj) == leibniz_char_poly(adj)
        assert char_poly(adj) == Polynomial.from_roots([4, 0, 0, 0, -2, -2])

    def test_zero_matrix(self):
        assert char_poly(np.zeros((3, 3), dtype=object)) == Polynomial([0, 0, 0, 1])

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            char_poly(np.zeros((2, 3), dtype=object))

    def test_random_vs_leibniz(self):
        rng = random.Random(17)
        for _ in range(15):
            g = random_graph(rng.randint(1, 6), rng)
            adj = adjacency_matrix(g)
            assert char_poly(adj) == leibniz_char_poly(adj)


class TestMinPoly:
    def test_split_2_2(self):
        m = min_poly(adjacency_matrix(make_complete_split(2, 2)))
        assert m == Polynomial([0, -4, -5, 0, 1])

    def test_identity(self):
        assert min_poly(identity_matrix(3)) == Polynomial([-1, 1])

    def test_k3(self):
        assert min_poly(adjacency_matrix(complete_graph(3))) == Polynomial([-2, -1, 1])

    def test_divides_char_poly_and_squarefree(self):
        rng = random.Random(23)
        for _ in range(20):
            g = random_graph(rng.randint(1, 7), rng)
            adj = adjacency_matrix(g)
            mp, cp = min_poly(adj), char_poly(adj)
            assert mp.divides(cp)
            assert mp.is_monic
            # adjacency matrices are symmetric, so the minimal polynomial is
            # the squarefree part of the characteristic polynomial
            squarefree, rem = divmod(cp, poly_gcd(cp, cp.derivative()))
            assert rem.degree < 0
            assert mp == Polynomial(
                [c / squarefree.coeffs[-1] for c in squarefree.coeffs]
            )


class TestRankMultiplicity:
    def test_rank_basics(self):
        assert rank([[1, 2], [2, 4]]) == 1
        assert rank([[Fraction(1, 2), 0], [0, 1]]) == 2
        assert rank(np.zeros((3, 3), dtype=object)) == 0

    def test_octahedron_multiplicity(self):
        assert eig_multiplicity(make_cocktail(3), -2) == 2
        assert eig_multiplicity(make_cocktail(3), 4) == 1
        assert eig_multiplicity(make_cocktail(3), 0) == 3

    def test_split_2_2_has_no_minus_2(self):
        assert eig_multiplicity(make_complete_split(2, 2), -2) == 0

    def test_beyond_spectral_radius(self):
        rng = random.Random(5)
        for _ in range(10):
            g = random_graph(rng.randint(1, 7), rng)
            assert eig_multiplicity(g, g.n) == 0

    def test_rational_mu(self):
        g = complete_graph(3)
        assert eig_multiplicity(g, Fraction(1, 2)) == 0
        assert eig_multiplicity(g, -1) == 2

    def test_multiplicities_match_char_poly(self):
        rng = random.Random(31)
        for _ in range(15):
            g = random_graph(rng.randint(1, 7), rng)
            roots, _ = char_poly(adjacency_matrix(g)).factor_rational()
            assert sum(m for _, m in roots) <= g.n
            for value, mult in roots:
                assert eig_multiplicity(g, value) == mult
                assert char_poly(adjacency_matrix(g))(value) == 0


class TestNonMain:
    def test_octahedron(self):
        assert is_nonmain(make_cocktail(3), -2) is True

    def test_path_center_zero(self):
        assert is_nonmain(path_graph(3), 0) is True

    def test_isolated_vertex_zero_is_main(self):
        g = disjoint_union(complete_graph(1), complete_graph(2))
        assert is_nonmain(g, 0) is False

    def test_requires_eigenvalue(self):
        with pytest.raises(NotAnEigenvalueError):
            is_nonmain(complete_graph(3), 5)

    def test_regular_graphs_nonmain_below_degree(self):
        corpus = [
            make_cocktail(2),
            make_cocktail(3),
            make_cocktail(4),
            complete_graph(4),
            complete_graph(8),
            cycle_graph(4),
            cycle_graph(6),
            cycle_graph(8),
            Graph_cube(),
            make_complete_split(4, 4),  # K_4 + 4K_1 is not regular; skipped below
        ]
        for g in corpus:
            from starcomp import is_regular

            r = is_regular(g)
            if r is None:
                continue
            roots, _ = char_poly(adjacency_matrix(g)).factor_rational()
            for value, _m in roots:
                if value != r:
                    assert is_nonmain(g, value) is True
                else:
                    assert is_nonmain(g, value) is False


def Graph_cube():
    from starcomp import Graph

    edges = []
    for v in range(8):
        for bit in range(3):
            w = v ^ (1 << bit)
            if v < w:
                edges.append((v, w))
    return Graph(8, edges)


class TestResolvent:
    def test_candidate_diagonal_value(self):
        h = make_complete_split(2, 2)
        x = np.array([1, 0, 1, 1], dtype=object)  # one clique vertex + both others
        assert resolvent_bilinear(h, -2, x, x) == -2

    def test_zero_vector(self):
        h = make_complete_split(2, 2)
        z = np.zeros(4, dtype=object)
        assert resolvent_bilinear(h, -2, z, z) == 0

    def test_k1_scalar(self):
        h = complete_graph(1)
        e = np.array([1], dtype=object)
        assert resolvent_bilinear(h, 2, e, e) == Fraction(1, 2)

    def test_singular_rejected(self):
        h = make_complete_split(2, 2)
        x = np.ones(4, dtype=object)
        with pytest.raises(SingularResolventError):
            resolvent_bilinear(h, 0, x, x)

    def test_via_minpoly_coefficients_2_2(self):
        # a_3..a_0 = (1, -2, -1, -2) at s = t = 2, mu = -2
        h = make_complete_split(2, 2)
        adj = adjacency_matrix(h)
        expected = (
            adj @ adj @ adj
            + (-2) * (adj @ adj)
            + (-1) * adj
            + (-2) * identity_matrix(4)
        )
        got = resolvent_via_minpoly(h, -2)
        assert (got == expected).all()

    def test_via_minpoly_k1(self):
        got = resolvent_via_minpoly(complete_graph(1), 2)
        assert got.shape == (1, 1)
        assert got[0, 0] == 1

    def test_via_minpoly_matches_direct_inverse(self):
        rng = random.Random(71)
        trials = 0
        while trials < 20:
            g = random_graph(rng.randint(1, 8), rng)
            mu = Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2]))
            if eig_multiplicity(g, mu) > 0:
                continue
            trials += 1
            from starcomp.linalg import graph_min_poly

            m_mu = graph_min_poly(g)(mu)
            shifted = mu * identity_matrix(g.n) - adjacency_matrix(g)
            direct = invert_exact(shifted) * m_mu
            assert (resolvent_via_minpoly(g, mu) == direct).all()

    def test_bilinear_matches_scaled_matrix(self):
        rng = random.Random(13)
        for _ in range(10):
            g = random_graph(rng.randint(2, 6), rng)
            mu = Fraction(rng.randint(2, 9))  # beyond spectral radius
            from starcomp.linalg import graph_min_poly

            m_mu = graph_min_poly(g)(mu)
            scaled = resolvent_via_minpoly(g, mu)
            x = np.array([rng.randint(0, 1) for _ in range(g.n)], dtype=object)
            y = np.array([rng.randint(0, 1) for _ in range(g.n)], dtype=object)
            direct = resolvent_bilinear(g, mu, x, y)
            assert m_mu * direct == (x @ scaled @ y)
