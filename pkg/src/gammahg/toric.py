"""Toric models of the family attached to a gamma vector.

A model is an l x l unimodular integer matrix A whose first row is all ones,
whose first l-1 rows span the kernel of the dot-product-with-gamma map, and
whose last row k satisfies gamma . k = 1.  The columns m_j of the middle
d = l-2 rows are the exponents of the Laurent polynomial

    f = sum_j gamma_j t^(k_j) x^(m_j)

cutting out the family over the t-line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import (
    CriterionFails,
    KernelConditionFailed,
    NotPrime,
    NotUnimodular,
    RowOneNotOnes,
    TwistConditionFailed,
)
from .gamma import GammaVector, make_gamma
from .linalg import (
    bezout_vector,
    det_bareiss,
    invariant_factors,
    kernel_basis,
    mat_mul,
    q_rank,
    smith_normal_form,
)
from .polytope import LatticePolytope

Q = Fraction


def gamma_constant(g: GammaVector) -> Fraction:
    """The exact rational constant prod gamma_j ^ gamma_j."""
    out = Q(1)
    for e in g.entries:
        out *= Q(e) ** e
    return out


@dataclass(frozen=True)
class ToricModel:
    gamma: GammaVector
    A: tuple[tuple[int, ...], ...]  # l x l, rows: ones, m-rows, k-row

    @property
    def l(self) -> int:
        return self.gamma.length

    @property
    def d(self) -> int:
        return self.l - 2

    @property
    def m_columns(self) -> list[tuple[int, ...]]:
        """The l exponent vectors m_j in Z^d."""
        return [
            tuple(self.A[1 + i][j] for i in range(self.d)) for j in range(self.l)
        ]

    @property
    def k_vector(self) -> tuple[int, ...]:
        return self.A[self.l - 1]

    @cached_property
    def polytope(self) -> LatticePolytope:
        return LatticePolytope([list(m) for m in self.m_columns])

    @property
    def Gamma(self) -> Fraction:
        return gamma_constant(self.gamma)

    def f_terms(self) -> list[tuple[int, int, tuple[int, ...]]]:
        """Terms (gamma_j, k_j, m_j) of the defining Laurent polynomial."""
        ms = self.m_columns
        ks = self.k_vector
        return [(self.gamma.entries[j], ks[j], ms[j]) for j in range(self.l)]

    def to_json_dict(self) -> dict:
        gam = self.Gamma
        return {
            "gamma": list(self.gamma.entries),
            "A": [list(r) for r in self.A],
            "m": [list(m) for m in self.m_columns],
            "k": list(self.k_vector),
            "Gamma": f"{gam.numerator}/{gam.denominator}",
        }


def import_model(g: GammaVector, A) -> ToricModel:
    """Validate an explicit matrix A against all model invariants."""
    l = g.length
    rows = [tuple(int(x) for x in row) for row in A]
    if len(rows) != l or any(len(r) != l for r in rows):
        raise KernelConditionFailed(f"matrix must be {l}x{l}")
    if rows[0] != (1,) * l:
        raise RowOneNotOnes("first row of A must be all ones")
    top = [list(r) for r in rows[: l - 1]]
    for r in top:
        if sum(a * b for a, b in zip(r, g.entries)) != 0:
            raise KernelConditionFailed(f"row {r} is not in the kernel of gamma")
    if invariant_factors(top) != [1] * (l - 1):
        raise KernelConditionFailed(
            "first l-1 rows do not span the saturated kernel of gamma"
        )
    k = rows[l - 1]
    if sum(a * b for a, b in zip(k, g.entries)) != 1:
        raise TwistConditionFailed("last row k must satisfy gamma . k = 1")
    det = det_bareiss([list(r) for r in rows])
    if det not in (1, -1):
        raise NotUnimodular(f"det A = {det}, expected +-1")
    model = ToricModel(g, tuple(rows))
    ms = model.m_columns
    assert len(set(ms)) == l, "exponent vectors m_j must be pairwise distinct"
    return model


def build_model(g: GammaVector) -> ToricModel:
    """Deterministic canonical model.

    Starts from the Smith-normal-form kernel basis, changes basis so the
    all-ones vector becomes the first row (the coordinates of (1,...,1) in
    the kernel basis form a primitive vector, extended to a unimodular
    transform through another Smith computation), and takes the twist row
    from the Bezout certificate of gamma.
    """
    if not g.is_prime:
        raise NotPrime(f"no twist vector with gamma . k = 1 exists for {g}")
    l = g.length
    kb = kernel_basis(list(g.entries))  # (l-1) x l, rows = basis
    # coordinates of the all-ones vector in that basis
    cols = [[kb[r][c] for r in range(l - 1)] for c in range(l)]
    # solve kb^T * x = (1,...,1): build augmented integer solve via SNF
    u, s, v = smith_normal_form([list(row) for row in zip(*kb)])  # l x (l-1)
    ones = [1] * l
    w = [sum(u[i][j] * ones[j] for j in range(l)) for i in range(l)]
    x = []
    for i in range(l - 1):
        assert s[i][i] != 0 and w[i] % s[i][i] == 0, "ones not in kernel lattice?"
        x.append(w[i] // s[i][i])
    for i in range(l - 1, l):
        assert w[i] == 0
    coeff = [sum(v[i][j] * x[j] for j in range(l - 1)) for i in range(l - 1)]
    # extend the primitive row `coeff` to a unimodular (l-1) x (l-1) matrix
    u1, s1, v1 = smith_normal_form([coeff])
    assert s1[0][0] == 1, "coordinates of the all-ones vector are not primitive"
    # first row of sign * v1^{-1} equals coeff; v1^{-1} = adj / det
    det_v1 = det_bareiss(v1)
    n = l - 1
    inv = _int_inverse_unimodular(v1, det_v1)
    w_mat = [[u1[0][0] * inv[0][j] for j in range(n)]] + inv[1:]
    top = mat_mul(w_mat, kb)
    assert top[0] == [1] * l
    k_row = bezout_vector(list(g.entries))
    rows = [tuple(r) for r in top] + [tuple(k_row)]
    return import_model(g, rows)


def _int_inverse_unimodular(m, det):
    """Inverse of a unimodular integer matrix (integer entries)."""
    n = len(m)
    from .linalg import q_inverse

    inv = q_inverse(m)
    out = []
    for row in inv:
        r = []
        for x in row:
            assert x.denominator == 1
            r.append(int(x))
        out.append(r)
    return out


def translate_model(model: ToricModel, h: int) -> ToricModel:
    """Shift exponents by column h (1-indexed): m_j -> m_j - m_h, k_j -> k_j - k_h."""
    if not 1 <= h <= model.l:
        raise ValueError(f"column index {h} out of range")
    j0 = h - 1
    ms = model.m_columns
    ks = model.k_vector
    d, l = model.d, model.l
    rows = [(1,) * l]
    for i in range(d):
        rows.append(tuple(ms[j][i] - ms[j0][i] for j in range(l)))
    rows.append(tuple(ks[j] - ks[j0] for j in range(l)))
    return import_model(model.gamma, rows)


def newton_polytope(model: ToricModel) -> dict:
    """Vertex/face data for the Newton polytope of the model.

    Reports whether it is a simplex; for a simplex (exactly one negative or
    one positive entry) the remaining exponent vector lies in the interior.
    """
    P = model.polytope
    interior = P.interior_point_indices()
    return {
        "polytope": P,
        "vertices": [model.m_columns[i] for i in P.vertex_indices],
        "is_simplex": P.is_simplex,
        "interior_generator_indices": interior,
        "faces_by_dim": {
            d: [f.vertex_indices for f in fs] for d, fs in P.faces_by_dim.items()
        },
    }


def singular_fiber_criterion(g: GammaVector, u) -> bool:
    """True iff prod u_j^gamma_j equals Gamma (u rational and nonzero)."""
    us = [Q(x) for x in u]
    if len(us) != g.length or any(x == 0 for x in us):
        raise ValueError("u must be a list of l nonzero rationals")
    prod = Q(1)
    for x, e in zip(us, g.entries):
        prod *= x**e
    return prod == gamma_constant(g)


def singular_point(model: ToricModel, u) -> tuple[Fraction, ...]:
    """The unique singular point of the fibre cut out by coefficients u.

    Solves x^(m_j - m_1) = u_1 gamma_j / (gamma_1 u_j) through the lattice
    structure: the difference vectors span Z^d, so the solution is rational
    whenever u is.  Raises ``CriterionFails`` when prod u^gamma != Gamma.
    """
    g = model.gamma
    if not singular_fiber_criterion(g, u):
        raise CriterionFails("prod u_j^gamma_j != Gamma: the fibre is smooth")
    us = [Q(x) for x in u]
    ms = model.m_columns
    d, l = model.d, model.l
    diff = [[ms[j][i] - ms[0][i] for j in range(1, l)] for i in range(d)]  # d x (l-1)
    targets = [
        us[0] * g.entries[j] / (g.entries[0] * us[j]) for j in range(1, l)
    ]
    uu, ss, vv = smith_normal_form([list(r) for r in diff])
    for i in range(d):
        assert ss[i][i] == 1, "difference lattice is not saturated"
    # diff * (V_{1..d} @ U) = I, so column i of V_{1..d} U solves diff*c = e_i
    x = []
    for i in range(d):
        xi = Q(1)
        for j in range(l - 1):
            e = sum(vv[j][r] * uu[r][i] for r in range(d))
            xi *= targets[j] ** e
        x.append(xi)
    for j in range(1, l):  # plug back in: certificate of correctness
        val = Q(1)
        for i in range(d):
            val *= x[i] ** (ms[j][i] - ms[0][i])
        assert val == targets[j - 1], "multiplicative system inconsistent"
    return tuple(x)


def singular_point_at_t(model: ToricModel, t) -> tuple[Fraction, ...]:
    """Singular point of the fibre at parameter t (t = 1 for the family)."""
    t = Q(t)
    u = [
        g * t**k for g, k, _ in model.f_terms()
    ]
    return singular_point(model, u)


def hessian_determinant(model: ToricModel) -> int:
    """det(M diag(gamma) M^T); equals -prod(gamma_j) for every valid model."""
    d, l = model.d, model.l
    ms = model.m_columns
    gam = model.gamma.entries
    h = [
        [
            sum(gam[j] * ms[j][i1] * ms[j][i2] for j in range(l))
            for i2 in range(d)
        ]
        for i1 in range(d)
    ]
    return det_bareiss(h)


def face_systems_report(points: list[tuple[int, ...]]) -> dict:
    """Quasi-regularity test on an arbitrary exponent set.

    For each proper face F of positive dimension of the hull, the columns
    (1, m_j) over the exponents lying on F must be linearly independent;
    then the face-restricted zero loci are smooth for every choice of
    nonzero coefficients.  Returns per-face verdicts.
    """
    P = LatticePolytope([list(p) for p in points])
    verdicts = []
    all_pass = True
    for face in P.proper_faces():
        if face.dim < 1:
            continue
        members = [
            j
            for j, p in enumerate(points)
            if all(P._is_tight(i, p) for i in face.tight_facets)
        ]
        cols = [[1] + list(points[j]) for j in members]
        full = q_rank(cols) == len(members)
        all_pass = all_pass and full
        verdicts.append(
            {
                "face_dim": face.dim,
                "exponent_indices": members,
                "full_rank": full,
            }
        )
    return {"ok": all_pass, "faces": verdicts}


def quasi_regularity_check(model: ToricModel) -> dict:
    """Per-face full-rank verdicts for the model's exponent vectors.

    Valid models always pass: proper faces of the Newton polytope contain
    exactly their vertices, which are affinely independent.
    """
    return face_systems_report(model.m_columns)
