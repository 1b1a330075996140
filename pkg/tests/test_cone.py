"""Cone lattice points, filtration tags, census numbers."""

import random
from fractions import Fraction as Q
from itertools import combinations

import pytest

from gammahg.cone import (
    ConePoint,
    classify,
    enumerate_cone,
    graded_generator_counts,
    interior_count,
)
from gammahg.errors import PointOutsideCone
from gammahg.gamma import make_gamma
from gammahg.linalg import q_rank
from gammahg.toric import build_model
from tests.conftest import random_gamma


def in_hull_oracle(vertices, point, scale):
    """Membership of point/scale in conv(vertices): search for a barycentric
    representation over some affinely independent subset.  Independent of the
    facet machinery in the package."""
    d = len(vertices[0])
    for subset in combinations(range(len(vertices)), d + 1):
        vs = [vertices[i] for i in subset]
        mat = [[Q(1)] * (d + 1)] + [
            [Q(vs[j][i]) for j in range(d + 1)] for i in range(d)
        ]
        rhs = [Q(1)] + [Q(point[i], scale) for i in range(d)]
        sol = _solve_or_none(mat, rhs)
        if sol is not None and all(x >= 0 for x in sol):
            return True
    return False


def _solve_or_none(mat, rhs):
    n = len(mat)
    a = [list(mat[i]) + [rhs[i]] for i in range(n)]
    cols = len(mat[0])
    r = 0
    piv_cols = []
    for c in range(cols):
        piv = None
        for i in range(r, n):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, n):
        if a[i][cols] != 0:
            return None
    sol = [Q(0)] * cols
    for i, c in enumerate(piv_cols):
        sol[c] = a[i][cols]
    return sol


def test_curve_census(curve_model):
    pts1 = enumerate_cone(curve_model, 1)
    assert len(pts1) == 7
    interior1 = [p.m for p in pts1 if classify(curve_model, p).minimal_face_dim == 2]
    assert sorted(interior1) == [(1, 1), (1, 2)]
    assert interior_count(curve_model, 1) == 2


def test_chebyshev_census(cheb_model):
    assert interior_count(cheb_model, 1) == 0
    assert interior_count(cheb_model, 2) == 15


def test_enumeration_matches_brute_oracle(curve_model, cheb_model):
    rng = random.Random(67)
    models = [curve_model, cheb_model]
    for _ in range(4):
        models.append(build_model(random_gamma(rng, length_range=(3, 5), bound=7)))
    for model in models:
        P = model.polytope
        verts = [model.m_columns[i] for i in P.vertex_indices]
        d = model.d
        for k in range(1, 5 if model.d <= 2 else 4):
            pts = [p.m for p in enumerate_cone(model, k) if p.k == k]
            los = [min(v[i] for v in verts) * k for i in range(d)]
            his = [max(v[i] for v in verts) * k for i in range(d)]
            brute = []

            def scan(i, prefix):
                if i == d:
                    if in_hull_oracle(verts, prefix, k):
                        brute.append(tuple(prefix))
                    return
                for x in range(los[i], his[i] + 1):
                    scan(i + 1, prefix + [x])

            scan(0, [])
            assert sorted(pts) == sorted(brute), (model.gamma, k)


def test_enumeration_deterministic_order(curve_model):
    pts = enumerate_cone(curve_model, 3)
    assert pts == sorted(pts)


def test_classify_examples(curve_model, cheb_model):
    tag = classify(curve_model, ConePoint(1, (1, 1)))
    assert tag.minimal_face_dim == 2 and tag.hodge_level == 1
    assert tag.in_weight_ideal(1, 2)  # interior: codim 0 < 1
    assert tag.in_hodge_space(1)

    vtag = classify(curve_model, ConePoint(1, (2, 0)))
    assert vtag.minimal_face_dim == 0
    for ell in range(1, 2):
        assert not vtag.in_weight_ideal(ell, 2)

    ctag = classify(cheb_model, ConePoint(2, (2, 1, 1)))
    assert ctag.minimal_face_dim == 3

    with pytest.raises(PointOutsideCone):
        classify(curve_model, ConePoint(1, (5, 5)))


def test_ray_invariance_of_face_dim(curve_model):
    for p in enumerate_cone(curve_model, 2):
        base = classify(curve_model, p).minimal_face_dim
        for c in (2, 3):
            scaled = ConePoint(c * p.k, tuple(c * x for x in p.m))
            assert classify(curve_model, scaled).minimal_face_dim == base


def test_hodge_space_nesting(curve_model):
    for p in enumerate_cone(curve_model, 2):
        tag = classify(curve_model, p)
        for ell in range(p.k, p.k + 4):
            assert tag.in_hodge_space(ell)
        assert not tag.in_hodge_space(p.k - 1)


def test_graded_generator_counts(curve_model, cheb_model):
    counts = graded_generator_counts(curve_model)
    assert counts[(1, 2)] == 2  # two interior generators at pole order one
    ccounts = graded_generator_counts(cheb_model)
    assert (1, 3) not in ccounts  # no interior points at pole order one
    assert ccounts[(2, 3)] == 15
