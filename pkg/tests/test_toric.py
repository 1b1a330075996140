"""Toric models: construction, validation, singularities, regularity."""

import math
import random
from fractions import Fraction as Q

import pytest

from gammahg.errors import (
    CriterionFails,
    KernelConditionFailed,
    NotPrime,
    RowOneNotOnes,
    TwistConditionFailed,
)
from gammahg.gamma import make_gamma
from gammahg.toric import (
    build_model,
    face_systems_report,
    gamma_constant,
    hessian_determinant,
    import_model,
    newton_polytope,
    quasi_regularity_check,
    singular_fiber_criterion,
    singular_point,
    singular_point_at_t,
    translate_model,
)
from tests.conftest import CHEB_A, CURVE_A, random_gamma


def test_import_paper_models(curve_model, cheb_model):
    assert curve_model.m_columns == [(2, 0), (0, 3), (2, 2), (1, 0)]
    assert curve_model.k_vector == (0, 1, 1, 0)
    assert cheb_model.k_vector == (0, -1, 0, 0, 0)
    assert curve_model.Gamma == Q(27 * 256, -3125 * 4)


def test_import_model_validation_errors():
    g = make_gamma([-5, -2, 3, 4])
    with pytest.raises(KernelConditionFailed):
        import_model(g, [[1, 1, 1, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    with pytest.raises(RowOneNotOnes):
        import_model(g, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    bad = [row[:] for row in CURVE_A]
    bad[3] = [0, 0, 0, 0]
    with pytest.raises(TwistConditionFailed):
        import_model(g, bad)


def test_build_model_deterministic_and_valid():
    g = make_gamma([-5, -2, 3, 4])
    m1 = build_model(g)
    m2 = build_model(g)
    assert m1.A == m2.A
    with pytest.raises(NotPrime):
        build_model(make_gamma([-4, 2, 2]))
    m3 = build_model(make_gamma([-2, 1, 1]))
    assert m3.d == 1


def test_translate_model(curve_model, cheb_model):
    tm = translate_model(curve_model, 4)
    assert tm.m_columns == [(1, 0), (-1, 3), (1, 2), (0, 0)]
    assert tm.k_vector == (0, 1, 1, 0)
    # translating by a column with zero exponent and twist is the identity
    assert translate_model(tm, 4).A == tm.A
    translate_model(cheb_model, 2)  # invariants re-checked inside
    # composing two translations equals one translation at the exponent level
    t13 = translate_model(translate_model(curve_model, 1), 3)
    direct = translate_model(curve_model, 3)
    base = curve_model.m_columns
    # both differ from the original by a single overall shift
    shift1 = tuple(
        a - b for a, b in zip(t13.m_columns[0], base[0])
    )
    assert all(
        tuple(a - b for a, b in zip(mc, bc)) == shift1
        for mc, bc in zip(t13.m_columns, base)
    )
    assert t13.m_columns == direct.m_columns


def test_newton_polytope_reports(curve_model, cheb_model):
    np1 = newton_polytope(curve_model)
    assert sorted(np1["vertices"]) == sorted([(2, 0), (0, 3), (2, 2), (1, 0)])
    assert not np1["is_simplex"]

    np2 = newton_polytope(cheb_model)
    assert not np2["is_simplex"]
    assert len(np2["vertices"]) == 5  # all exponents are vertices here

    m4 = build_model(make_gamma([-4, 1, 1, 2]))
    np3 = newton_polytope(m4)
    assert np3["is_simplex"]
    # the exponent of the unique negative entry lies interior
    assert np3["interior_generator_indices"] == [0]


def test_singular_fiber_criterion_examples():
    g = make_gamma([-5, -2, 3, 4])
    assert singular_fiber_criterion(g, list(g.entries))
    assert singular_fiber_criterion(g, [2 * e for e in g.entries])
    # boundary of the regularity locus: u3^3 u4^4 / (u1^5 u2^2) hits the
    # constant Gamma = -3^3 2^6 / 5^5 exactly on the singular fibres
    u = (Q(-5), Q(-2), Q(3), Q(4))
    lhs = u[2] ** 3 * u[3] ** 4 / (u[0] ** 5 * u[1] ** 2)
    assert lhs == -Q(3**3 * 2**6, 5**5) == gamma_constant(g)
    assert singular_fiber_criterion(g, u)
    u_off = (Q(-5), Q(-2), Q(3), Q(5))
    lhs_off = u_off[2] ** 3 * u_off[3] ** 4 / (u_off[0] ** 5 * u_off[1] ** 2)
    assert lhs_off != gamma_constant(g)
    assert not singular_fiber_criterion(g, u_off)


def test_singular_point_examples(curve_model, cheb_model):
    g = curve_model.gamma
    assert singular_point(curve_model, list(g.entries)) == (Q(1), Q(1))
    assert singular_point_at_t(curve_model, 1) == (Q(1), Q(1))
    assert singular_point_at_t(cheb_model, 1) == (Q(1), Q(1), Q(1))
    with pytest.raises(CriterionFails):
        singular_point(curve_model, [1, 1, 1, 1])


def test_singular_point_satisfies_equations(curve_model):
    # rescale gamma along kernel directions: the criterion product is
    # preserved, so the fibre stays singular and the point must satisfy both
    # defining equations exactly
    from gammahg.linalg import kernel_basis

    g = curve_model.gamma
    scalings = [[0, 0, 0, 0], [1, 1, 1, 1]] + kernel_basis(list(g.entries))
    for s in (Q(2), Q(-3, 5)):
        for v in scalings:
            u = [gj * s ** v[j] for j, gj in enumerate(g.entries)]
            assert singular_fiber_criterion(g, u)
            x = singular_point(curve_model, u)
            ms = curve_model.m_columns
            val = sum(
                uj * math.prod(x[i] ** ms[j][i] for i in range(2))
                for j, uj in enumerate(u)
            )
            assert val == 0
            for i in range(2):
                dval = sum(
                    ms[j][i] * uj * math.prod(x[r] ** ms[j][r] for r in range(2))
                    for j, uj in enumerate(u)
                )
                assert dval == 0


def test_hessian_examples(curve_model, cheb_model):
    assert hessian_determinant(curve_model) == -120
    assert hessian_determinant(cheb_model) == -math.prod(cheb_model.gamma.entries)
    m = build_model(make_gamma([-2, 1, 1]))
    assert hessian_determinant(m) == 2


def test_hessian_law_fuzz():
    rng = random.Random(53)
    for _ in range(150):
        g = random_gamma(rng, length_range=(3, 6), bound=9)
        m = build_model(g)
        assert hessian_determinant(m) == -math.prod(g.entries)


def test_unimodularity_fuzz():
    from gammahg.linalg import det_bareiss

    rng = random.Random(59)
    for _ in range(150):
        g = random_gamma(rng, length_range=(3, 6), bound=9)
        m = build_model(g)
        assert det_bareiss([list(r) for r in m.A]) in (1, -1)


def test_quasi_regularity(curve_model, cheb_model):
    rep = quasi_regularity_check(curve_model)
    assert rep["ok"]
    assert len([f for f in rep["faces"] if f["face_dim"] == 1]) == 4
    assert quasi_regularity_check(cheb_model)["ok"]


def test_quasi_regularity_counterexample():
    # exponent set of ((y-1)^2 - (x-1)^3) z - 1: the height-one face carries
    # six exponents and its face system is rank deficient
    points = [(0, 2, 1), (0, 1, 1), (0, 0, 1), (3, 0, 1), (2, 0, 1), (1, 0, 1), (0, 0, 0)]
    rep = face_systems_report(points)
    assert not rep["ok"]
    failing = [f for f in rep["faces"] if not f["full_rank"]]
    assert any(f["face_dim"] == 2 and len(f["exponent_indices"]) == 6 for f in failing)


def test_simplex_iff_one_sign_isolated():
    rng = random.Random(61)
    for _ in range(100):
        g = random_gamma(rng, length_range=(3, 6), bound=9)
        m = build_model(g)
        negs = len(g.negatives())
        poss = len(g.positives())
        assert m.polytope.is_simplex == (negs == 1 or poss == 1)


def test_gamma_constant_sign_bookkeeping():
    assert gamma_constant(make_gamma([-2, 1, 1])) == Q(1, 4)
    assert gamma_constant(make_gamma([-4, 1, 1, 2])) == Q(1, 64)
    assert gamma_constant(make_gamma([-5, -2, 3, 4])) == Q(-1728, 3125)
