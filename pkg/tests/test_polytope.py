from fractions import Fraction as F
from itertools import permutations
import random

import pytest
from hypothesis import given

from exclusionpoly.errors import DomainError, GenericityError
from exclusionpoly.hull import facets_of_points
from exclusionpoly.majorization import majorizes
from exclusionpoly.polytope import (
    WeightVector,
    canonical,
    facets,
    generating_vertices,
    inner_outer,
    membership,
    polytope_inclusion,
    prime_weights,
    sorted_region_points,
    support_minimum,
    verify_certificate,
)
from exclusionpoly.rational import prefix_sums

from conftest import weight_vectors

W3 = (F(1, 2), F(2, 5), F(1, 10))


def test_weight_vector_validation():
    with pytest.raises(DomainError):
        WeightVector((F(1, 3), F(2, 3)))
    with pytest.raises(DomainError):
        WeightVector((F(1, 2), F(1, 4)))
    with pytest.raises(DomainError):
        WeightVector((F(3, 2), F(-1, 2)))
    w = WeightVector((F(1, 2), F(1, 2), 0))
    assert w.r == 2 and not w.is_generic()
    assert prime_weights(3).weights == (F(5, 10), F(3, 10), F(2, 10))


def test_two_three_vertex():
    vs = generating_vertices(2, 3, W3)
    assert vs.vertices == ((F(9, 10), F(3, 5), F(1, 2)),)
    assert vs.provenance[0].sequence == ((1, 2), (1, 3), (2, 3))


def test_three_six_vertices_r2_r3():
    w1, w2 = F(7, 10), F(3, 10)
    assert generating_vertices(3, 6, (w1, w2)).vertices == ((1, 1, w1, w2, 0, 0),)
    w = (F(1, 2), F(1, 3), F(1, 6))
    a, b, c = w
    got = set(generating_vertices(3, 6, w).vertices)
    assert got == {(1, 1, a, b, c, 0), (1, a + b, a + c, b + c, 0, 0)}


def test_membership_examples():
    vs = generating_vertices(2, 3, W3)
    cert = membership((F(9, 10), F(3, 5), F(1, 2)), vs)
    assert cert.inside and cert.simplex_coefficients == (1,)
    assert membership((F(2, 3),) * 3, vs).inside
    out = membership((1, F(19, 20), F(1, 20)), vs)
    assert not out.inside and out.violated_prefix == 2
    assert verify_certificate((1, F(19, 20), F(1, 20)), vs, out)
    with pytest.raises(DomainError):
        membership((1, 1, 1), vs)
    with pytest.raises(DomainError):
        membership((1, 1), vs)


@given(weight_vectors(max_r=4, generic=False))
def test_uniform_inside_for_every_weight(w):
    vs = generating_vertices(3, 6, w)
    assert membership((F(1, 2),) * 6, vs).inside


def test_support_minimum_examples():
    vs = generating_vertices(2, 3, W3)
    assert support_minimum((0, 0, 0), vs)[0] == 0
    assert support_minimum((1, 2, 3), vs) == (F(18, 5), (F(9, 10), F(3, 5), F(1, 2)))
    w = (F(5, 8), F(3, 8))
    assert support_minimum((0, 0, 0, 1, 1, 1), generating_vertices(3, 6, w))[0] == F(3, 8)


def test_support_minimum_by_enumeration():
    rng = random.Random(5)
    vs = generating_vertices(2, 4, prime_weights(3))
    for _ in range(20):
        h = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4)]
        brute = min(sum(a * b for a, b in zip(h, p)) for v in vs.vertices for p in permutations(v))
        assert support_minimum(h, vs)[0] == brute


def test_inner_outer():
    vs = generating_vertices(2, 3, W3)
    pair = inner_outer(vs)
    assert pair.v_minus == pair.v_plus == vs.vertices[0]
    w = (F(1, 2), F(1, 3), F(1, 6))
    a, b, c = w
    pair = inner_outer(generating_vertices(3, 6, w))
    assert pair.v_plus == (1, 1, a, 1 - a, 0, 0)
    assert prefix_sums(pair.v_minus) == [1, min(2, 1 + a + b), 2 + a, 2 + a + b, 3, 3]


def test_two_fermion_facets():
    hs = facets(generating_vertices(2, 3, W3))
    w1, w2 = W3[0], W3[1]
    assert set(hs.inequalities) == {canonical((1, 1, 0), 1 + w1, 2), canonical((1, 0, 0), w1 + w2, 2)}


def test_facet_counts_and_errors():
    assert len(facets(generating_vertices(3, 6, prime_weights(2))).inequalities) == 2
    assert len(facets(generating_vertices(3, 6, prime_weights(4))).inequalities) == 5
    with pytest.raises(GenericityError):
        facets(generating_vertices(3, 6, (F(1, 2), F(1, 2))))
    with pytest.raises(DomainError):
        facets(generating_vertices(3, 6, prime_weights(3)), max_dim=4)
    with pytest.raises(DomainError):
        facets(generating_vertices(2, 2, (1,)))


def test_canonical_form():
    # λ1 - λ2 >= 0 and λ1 + λ2 <= 3/2 modulo Σλ = 2 at d = 3
    assert canonical((-1, 1, 0), 0, 2) == ((-1, 1, 0), 0)
    assert canonical((2, 2, 2), 5, 2) == ((0, 0, 0), 1)
    assert canonical((1, 1, 0), F(3, 2), 2) == ((1, 1, 0), F(3, 2))
    assert canonical((2, 1, 1), F(29, 10), 2) == ((1, 0, 0), F(9, 10))


def _brute_facets(points):
    # every affinely spanning hyperplane through points with all points on one side
    from itertools import combinations
    from exclusionpoly.hull import _primitive
    dim = len(points[0])
    out = set()
    for sub in combinations(points, dim):
        rows = [[F(1)] + [F(x) for x in p] for p in sub]
        # null space of rows (dim x (dim+1))
        m = [r[:] for r in rows]
        piv_cols, r = [], 0
        for c in range(dim + 1):
            p = next((i for i in range(r, dim) if m[i][c] != 0), None)
            if p is None:
                continue
            m[r], m[p] = m[p], m[r]
            m[r] = [x / m[r][c] for x in m[r]]
            for i in range(dim):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            piv_cols.append(c)
            r += 1
        if r != dim:
            continue
        free = next(c for c in range(dim + 1) if c not in piv_cols)
        y = [F(0)] * (dim + 1)
        y[free] = F(1)
        for i, c in enumerate(piv_cols):
            y[c] = -m[i][free]
        vals = [y[0] + sum(a * b for a, b in zip(y[1:], p)) for p in points]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            y = [-x for x in y]
        else:
            continue
        den = 1
        for x in y:
            den = den * x.denominator // __import__("math").gcd(den, x.denominator)
        yi = _primitive([int(x * den) for x in y])
        a = tuple(-x for x in yi[1:])
        out.add((a, F(yi[0])))
    return out


@pytest.mark.parametrize("seed", range(6))
def test_hull_matches_brute_force(seed):
    rng = random.Random(seed)
    dim = 2 + seed % 2
    pts = [tuple(F(rng.randint(0, 6), rng.randint(1, 3)) for _ in range(dim)) for _ in range(8)]
    try:
        ours = facets_of_points(pts)
    except DomainError:
        return
    norm = set()
    from math import gcd
    for a, b in _brute_facets(pts):
        g = 0
        for x in a:
            g = gcd(g, x)
        norm.add((tuple(x // g for x in a), b / g))
    assert set(ours) == norm


def test_hull_rejects_flat_points():
    with pytest.raises(DomainError):
        facets_of_points([(0, 0), (1, 1), (2, 2)])


def test_region_points_are_sorted_and_feasible():
    vs = generating_vertices(3, 6, prime_weights(3))
    for p in sorted_region_points(vs):
        assert list(p) == sorted(p, reverse=True) and sum(p) == 3


def test_inclusion_examples():
    assert polytope_inclusion(W3, W3, 2, 3)
    assert polytope_inclusion((F(1, 2), F(1, 2), 0), (1, 0, 0), 2, 3)
    assert not polytope_inclusion((1, 0, 0), (F(1, 2), F(1, 2), 0), 2, 3)


@given(weight_vectors(max_r=4), weight_vectors(max_r=4))
def test_inclusion_tracks_majorization(a, b):
    k = max(len(a), len(b))
    pa, pb = a + (0,) * (k - len(a)), b + (0,) * (k - len(b))
    assert polytope_inclusion(a, b, 2, 4) == majorizes(pa, pb)


def test_degenerate_weights_merge_vertices():
    vs = generating_vertices(2, 4, (F(1, 4),) * 4)
    assert vs.merged and len(vs.vertices) < vs.lineup_count
