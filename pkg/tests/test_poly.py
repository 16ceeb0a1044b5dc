from fractions import Fraction
from itertools import product

from hypothesis import given
from hypothesis import strategies as st

from hkepw.poly import Poly, interpolate_simplex, num_nodes, simplex_nodes


def polys(nvars, degree):
    monomials = [m for m in product(range(degree + 1), repeat=nvars) if sum(m) <= degree]
    return st.dictionaries(st.sampled_from(monomials), st.fractions(max_denominator=5).filter(bool), max_size=12).map(
        lambda d: Poly(nvars, d)
    )


def test_node_count():
    assert len(simplex_nodes(5, 6)) == num_nodes(5, 6) == 462


@given(polys(3, 4))
def test_interpolation_recovers_polynomial(p):
    nodes = simplex_nodes(3, 4)
    assert interpolate_simplex({a: p(a) for a in nodes}, 3, 4) == p


@given(polys(2, 3), polys(2, 3), st.lists(st.integers(-5, 5), min_size=2, max_size=2))
def test_ring_operations_evaluate_pointwise(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)


@given(polys(2, 3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_homogenize_and_substitute(p, x):
    h = p.homogenize(3)
    assert h.is_homogeneous() or h.is_zero()
    if x[0]:
        assert h(x) == Fraction(x[0]) ** 3 * p([Fraction(x[1], x[0]), Fraction(x[2], x[0])])
    R = [[1, 2, 0], [0, 1, -1]]
    assert p.substitute_linear(R)(x) == p([x[0] + 2 * x[1], x[1] - x[2]])


@given(polys(3, 3).filter(lambda p: not p.is_zero()))
def test_content_normalization(p):
    n, s = p.content_normalized()
    assert n * s == p
    assert all(c.denominator == 1 for c in n.terms.values())
    assert n.sorted_terms()[0][1] > 0


def test_json_round_trip():
    p = Poly(2, {(1, 0): Fraction(1, 2), (0, 2): -3})
    assert Poly.from_json(2, p.to_json()) == p
