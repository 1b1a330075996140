"""Cohomology engine: pole-order reduction, bases, and the theta action.

Monomial forms x^beta / f^beta0 * dx/x are indexed by cone points
(beta0, beta).  The twisted torus operators give, for every cone point
(k, m) and every index i, one exact relation connecting pole orders k and
k + 1.  Relations sourced at pole orders <= d present the cohomology of the
complement on generators of pole order <= d + 1; the engine eliminates them
by sparse fraction-free row reduction over Z[t] (content-stripped
cross-multiplication), selects a deterministic basis preferring low pole
order and high minimal-face dimension, and records exact Q(t)-coordinates
for every generator.

On top of the coordinate table sit the Gauss-Manin theta action, minimal
annihilating operators (iterate theta until the first linear dependence),
and the weight-graded dimension counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateModel, InteriorPoint, UnreducibleForm, ZeroClass
from .ore import OreOperator
from .polys import Poly, RF_ZERO, RatFun, igcd_poly, imul, itrim
from .toric import ToricModel

Q = Fraction

MonomialForm = tuple[int, tuple[int, ...]]  # (pole order, exponent vector)
CohomologyClass = dict[MonomialForm, RatFun]


def form_class(form: MonomialForm, coeff: RatFun | int = 1) -> CohomologyClass:
    c = coeff if isinstance(coeff, RatFun) else RatFun.const(coeff)
    return {form: c}


def class_of_dx_over_x(model: ToricModel) -> CohomologyClass:
    """The class of dx/x, written through the identity f/f = 1."""
    out: CohomologyClass = {}
    for gj, kj, mj in model.f_terms():
        out[(1, mj)] = RatFun.const(gj) * RatFun.t_power(kj)
    return out


def apply_d_operator(
    model: ToricModel, i: int, k: int, m: tuple[int, ...]
) -> CohomologyClass:
    """The exact relation produced by the i-th twisted operator at (k, m),
    expressed on the monomial forms (the combination is zero in cohomology).

    In form coordinates: c_i * w_(k,m) - k * sum_j A_ij gamma_j t^k_j
    w_(k+1, m+m_j), where c_0 = k and c_i = m_i for i >= 1, and A_0j = 1,
    A_ij = (m_j)_i.  The factorial bookkeeping of the comparison map between
    monomials and forms is already threaded in (it contributes the factor k).
    """
    if not 0 <= i <= model.d:
        raise ValueError(f"operator index {i} out of range")
    low = Q(k) if i == 0 else Q(m[i - 1])
    out: CohomologyClass = {(k, m): RatFun.const(low)}
    for gj, kj, mj in model.f_terms():
        weight = 1 if i == 0 else mj[i - 1]
        if weight == 0:
            continue
        target = (k + 1, tuple(a + b for a, b in zip(m, mj)))
        term = RatFun.const(-k * weight * gj) * RatFun.t_power(kj)
        out[target] = out.get(target, RF_ZERO) + term
        if out[target].is_zero():
            del out[target]
    return out


def theta_of_form(model: ToricModel, form: MonomialForm) -> CohomologyClass:
    """theta applied to a single monomial form: -k * sum_j k_j gamma_j t^k_j
    times the form shifted by m_j at pole order k + 1."""
    k, m = form
    out: CohomologyClass = {}
    for gj, kj, mj in model.f_terms():
        if kj == 0:
            continue
        target = (k + 1, tuple(a + b for a, b in zip(m, mj)))
        term = RatFun.const(-k * kj * gj) * RatFun.t_power(kj)
        out[target] = out.get(target, RF_ZERO) + term
        if out[target].is_zero():
            del out[target]
    return out


# ---------------------------------------------------------------------------
# sparse echelon over Z[t] (coefficients: little-endian int lists)
# ---------------------------------------------------------------------------


class _SparseEchelon:
    """Incremental sparse row echelon with content-stripped cross-elimination.

    Columns are integers; rows map column -> nonzero integer polynomial.  A
    row is reduced against existing pivots at its successive leading columns
    and then either dies (dependent) or becomes the pivot of its lead.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, list[int]]] = {}

    @staticmethod
    def _strip(row: dict[int, list[int]]) -> None:
        from math import gcd as _gcd

        if not row:
            return
        # primitive polynomial content across the row
        g: list[int] | None = None
        for v in row.values():
            g = list(v) if g is None else igcd_poly(g, v)
            if len(g) == 1:
                break
        if g is not None and len(g) > 1:
            for col, v in list(row.items()):
                row[col] = _exact_poly_div(v, g)
        # integer content
        cont = 0
        for v in row.values():
            for c in v:
                cont = _gcd(cont, c)
            if cont == 1:
                break
        if cont > 1:
            for col, v in list(row.items()):
                row[col] = [c // cont for c in v]

    def insert(self, row: dict[int, list[int]]) -> int | None:
        """Reduce and register a row; returns its pivot column or None."""
        row = {c: list(v) for c, v in row.items() if itrim(v)}
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                self._strip(row)
                self.pivots[lead] = row
                return lead
            a = row[lead]
            b = piv[lead]
            g = igcd_poly(a, b)
            fa = _exact_poly_div(b, g)
            fb = _exact_poly_div(a, g)
            new: dict[int, list[int]] = {}
            for col in set(row) | set(piv):
                left = imul(fa, row[col]) if col in row else []
                right = imul(fb, piv[col]) if col in piv else []
                val = itrim([x - y for x, y in _zip_pad(left, right)])
                if val:
                    new[col] = val
            row = new
            if row:
                self._strip(row)
        return None


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)


def _exact_poly_div(a: list[int], b: list[int]) -> list[int]:
    """Exact division in Q[t] landing in Z[t] (used only when it does)."""
    if not a:
        return []
    pa, pb = Poly(tuple(a)), Poly(tuple(b))
    q = pa.exact_div(pb)
    out = []
    for c in q.coeffs:
        assert c.denominator == 1
        out.append(int(c))
    return out


# ---------------------------------------------------------------------------
# the engine
# ---------------------------------------------------------------------------


@dataclass
class CohomologyBasis:
    model: ToricModel
    basis: list[MonomialForm]
    dimension: int
    # final coordinates over `basis` for every cone point with k <= d + 1
    coordinates: dict[MonomialForm, list[RatFun]]
    gm_matrix: list[list[RatFun]]  # column j = coordinates of theta(basis[j])
    face_dims: dict[MonomialForm, int]


def _elimination_order(points_with_tags):
    """Ordering for elimination: the reverse of basis desirability.

    Desirability sorts by (pole order asc, face dim desc, exponent lex asc);
    elimination consumes the least desirable columns first.
    """
    desirability = sorted(points_with_tags, key=lambda p: (p[0][0], -p[1], p[0][1]))
    return list(reversed(desirability))


def build_basis(model: ToricModel, max_extra_levels: int = 2) -> CohomologyBasis:
    """Assemble relations, eliminate, and fix the deterministic basis.

    The expected dimension of the quotient is volume(gamma) + d; relation
    sources are extended past pole order d (never needed for the regular
    models here, but checked) and the computation fails loudly if the
    dimension does not settle there.
    """
    from .gamma import volume

    d = model.d
    if d < 1:
        raise DegenerateModel("fibre dimension must be at least 1")
    expected = volume(model.gamma) + d
    last_dim = None
    for extra in range(max_extra_levels + 1):
        top = d + 1 + extra
        result = _build_with_levels(model, top, expected)
        if result is not None:
            return result
        last_dim = top
    raise DegenerateModel(
        f"quotient dimension did not settle at {expected} with sources up to "
        f"pole order {last_dim}"
    )


def _build_with_levels(model: ToricModel, top: int, expected: int):
    P = model.polytope
    d = model.d

    points: list[MonomialForm] = []
    face_dims: dict[MonomialForm, int] = {}
    for k in range(1, top + 1):
        for m in sorted(P.lattice_points(k)):
            form = (k, m)
            points.append(form)
            face_dims[form] = P.minimal_face_dim(m, k)

    order = _elimination_order([(p, face_dims[p]) for p in points])
    col_of = {form: i for i, (form, _) in enumerate(order)}
    form_of = [form for form, _ in order]

    ech = _SparseEchelon()
    for k in range(1, top):
        for m in sorted(P.lattice_points(k)):
            for i in range(d + 1):
                rel = apply_d_operator(model, i, k, m)
                row = _class_to_int_row(rel, col_of)
                if row:
                    ech.insert(row)

    ncols = len(form_of)
    free_cols = [c for c in range(ncols) if c not in ech.pivots]
    if len(free_cols) != expected:
        return None

    # back-substituted coordinates of every column over the free columns
    free_index = {c: i for i, c in enumerate(free_cols)}
    nfree = len(free_cols)
    coords_free: dict[int, dict[int, RatFun]] = {}
    for c in free_cols:
        coords_free[c] = {free_index[c]: RatFun.const(1)}
    for c in sorted(ech.pivots, reverse=True):
        row = ech.pivots[c]
        lead = RatFun(Poly(tuple(row[c])))
        acc: dict[int, RatFun] = {}
        for col, poly in row.items():
            if col == c:
                continue
            factor = RatFun(Poly(tuple(poly))) / lead
            for b, v in coords_free[col].items():
                acc[b] = acc.get(b, RF_ZERO) - factor * v
        coords_free[c] = {b: v for b, v in acc.items() if not v.is_zero()}

    # deterministic greedy basis among pole order <= d, desirability order
    candidates = sorted(
        (p for p in points if p[0] <= d),
        key=lambda p: (p[0], -face_dims[p], p[1]),
    )
    chosen: list[MonomialForm] = []
    chosen_vecs: list[list[RatFun]] = []
    echelon: list[tuple[int, list[RatFun]]] = []
    for cand in candidates:
        vec = [RF_ZERO] * nfree
        for b, v in coords_free[col_of[cand]].items():
            vec[b] = v
        red = _reduce_against(echelon, vec)
        leadpos = _first_nonzero(red)
        if leadpos is None:
            continue
        inv = red[leadpos].inverse()
        red = [inv * x for x in red]
        echelon.append((leadpos, red))
        echelon.sort(key=lambda t: t[0])
        chosen.append(cand)
        chosen_vecs.append(vec)
        if len(chosen) == expected:
            break
    if len(chosen) != expected:
        raise DegenerateModel(
            "pole orders <= d do not span the quotient; model is degenerate"
        )

    # change of basis: solve T x = coords for T = [chosen_vecs as columns]
    t_cols = chosen_vecs
    t_inv = _invert_ratfun_matrix([[t_cols[j][i] for j in range(nfree)] for i in range(nfree)])

    coordinates: dict[MonomialForm, list[RatFun]] = {}
    for form in points:
        if form[0] > d + 1:
            continue
        vec = [RF_ZERO] * nfree
        for b, v in coords_free[col_of[form]].items():
            vec[b] = v
        coordinates[form] = _mat_vec_ratfun(t_inv, vec)

    gm_cols = []
    for b_form in chosen:
        th = theta_of_form(model, b_form)
        gm_cols.append(_combine_coords(th, coordinates, expected))
    gm_matrix = [[gm_cols[j][i] for j in range(expected)] for i in range(expected)]

    return CohomologyBasis(
        model=model,
        basis=chosen,
        dimension=expected,
        coordinates=coordinates,
        gm_matrix=gm_matrix,
        face_dims=face_dims,
    )


def _class_to_int_row(cls: CohomologyClass, col_of) -> dict[int, list[int]]:
    """Clear denominators (powers of t and integer content) of a class."""
    shift = 0
    for coeff in cls.values():
        v = coeff.den.degree  # denominators here are powers of t
        shift = max(shift, v)
    row: dict[int, list[int]] = {}
    for form, coeff in cls.items():
        p = coeff.num * Poly.monomial(shift).exact_div(coeff.den)
        ints = []
        for c in p.coeffs:
            assert c.denominator == 1
            ints.append(int(c))
        ints = itrim(ints)
        if ints:
            row[col_of[form]] = ints
    return row


def _first_nonzero(vec):
    for i, v in enumerate(vec):
        if not v.is_zero():
            return i
    return None


def _reduce_against(echelon, vec):
    out = list(vec)
    for lead, row in echelon:
        if not out[lead].is_zero():
            f = out[lead]
            out = [x - f * y for x, y in zip(out, row)]
    return out


def _invert_ratfun_matrix(m):
    n = len(m)
    a = [list(row) + [RatFun.const(1) if i == j else RF_ZERO for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not a[i][c].is_zero():
                piv = i
                break
        if piv is None:
            raise DegenerateModel("basis change matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = a[c][c].inverse()
        a[c] = [inv * x for x in a[c]]
        for i in range(n):
            if i != c and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def _mat_vec_ratfun(m, v):
    n = len(m)
    out = []
    for i in range(n):
        acc = RF_ZERO
        for j, x in enumerate(v):
            if not x.is_zero() and not m[i][j].is_zero():
                acc = acc + m[i][j] * x
        out.append(acc)
    return out


def _combine_coords(cls: CohomologyClass, coordinates, dim) -> list[RatFun]:
    out = [RF_ZERO] * dim
    for form, coeff in cls.items():
        vec = coordinates.get(form)
        if vec is None:
            raise UnreducibleForm(f"form {form} is outside the coordinate table")
        for i in range(dim):
            if not vec[i].is_zero():
                out[i] = out[i] + coeff * vec[i]
    return out


# ---------------------------------------------------------------------------
# public operations on the basis data
# ---------------------------------------------------------------------------


def reduce_class(basisdata: CohomologyBasis, cls: CohomologyClass) -> list[RatFun]:
    """Exact coordinates of a class over the basis (zero vector iff exact).

    Forms of pole order above d + 1 are first rewritten downward by solving
    for combinations of relations whose leading parts match, repeatedly.
    """
    cls = _lower_high_poles(basisdata, dict(cls))
    return _combine_coords(cls, basisdata.coordinates, basisdata.dimension)


def _lower_high_poles(basisdata: CohomologyBasis, cls: CohomologyClass) -> CohomologyClass:
    model = basisdata.model
    d = model.d
    P = model.polytope
    while True:
        top = max((f[0] for f in cls), default=0)
        if top <= d + 1:
            return cls
        # relations sourced at top-1 have leading parts at level top
        level_pts = sorted(P.lattice_points(top))
        idx = {(top, m): i for i, m in enumerate(level_pts)}
        rows = []
        rels = []
        for m in sorted(P.lattice_points(top - 1)):
            for i in range(d + 1):
                rel = apply_d_operator(model, i, top - 1, m)
                lead = [RF_ZERO] * len(level_pts)
                for form, coeff in rel.items():
                    if form[0] == top:
                        lead[idx[form]] = coeff
                rows.append(lead)
                rels.append(rel)
        target = [RF_ZERO] * len(level_pts)
        for form, coeff in list(cls.items()):
            if form[0] == top:
                target[idx[form]] = coeff
        combo = _solve_row_combination(rows, target)
        if combo is None:
            raise UnreducibleForm(
                f"cannot lower pole order {top}: leading parts do not span"
            )
        for lam, rel in zip(combo, rels):
            if lam.is_zero():
                continue
            for form, coeff in rel.items():
                cur = cls.get(form, RF_ZERO) - lam * coeff
                if cur.is_zero():
                    cls.pop(form, None)
                else:
                    cls[form] = cur
        for form in list(cls):
            if form[0] == top:
                # numerical cancellation must have removed all top terms
                raise UnreducibleForm("pole lowering failed to cancel top level")


def _solve_row_combination(rows, target):
    """Find lambdas with sum lambda_i rows[i] = target over Q(t), or None.

    Echelonises the rows while tracking the combination producing each
    pivot row, then reduces the target against the pivots; the accumulated
    track satisfies target + sum track_i rows_i = residue, so lambdas are
    the negated track when the residue vanishes.
    """
    pivots: list[tuple[int, list[RatFun], list[RatFun]]] = []
    for r, row in enumerate(rows):
        vec = list(row)
        track = [RF_ZERO] * len(rows)
        track[r] = RatFun.const(1)
        for lead, prow, ptrack in pivots:
            if not vec[lead].is_zero():
                f = vec[lead]
                vec = [x - f * y for x, y in zip(vec, prow)]
                track = [x - f * y for x, y in zip(track, ptrack)]
        leadpos = _first_nonzero(vec)
        if leadpos is None:
            continue
        inv = vec[leadpos].inverse()
        vec = [inv * x for x in vec]
        track = [inv * x for x in track]
        pivots.append((leadpos, vec, track))
    tvec = list(target)
    ttrack = [RF_ZERO] * len(rows)
    for lead, prow, ptrack in pivots:
        if not tvec[lead].is_zero():
            f = tvec[lead]
            tvec = [x - f * y for x, y in zip(tvec, prow)]
            ttrack = [x - f * y for x, y in zip(ttrack, ptrack)]
    if _first_nonzero(tvec) is not None:
        return None
    return [-x for x in ttrack]


def gauss_manin_theta(basisdata: CohomologyBasis, cls: CohomologyClass) -> list[RatFun]:
    """Coordinates of theta applied to the class.

    theta acts on each monomial form geometrically and on the rational
    coefficients by t d/dt.
    """
    out: CohomologyClass = {}
    for form, coeff in cls.items():
        dc = coeff.theta()
        if not dc.is_zero():
            out[form] = out.get(form, RF_ZERO) + dc
        for tform, tcoeff in theta_of_form(basisdata.model, form).items():
            term = coeff * tcoeff
            cur = out.get(tform, RF_ZERO) + term
            if cur.is_zero():
                out.pop(tform, None)
            else:
                out[tform] = cur
    for form in list(out):
        if out[form].is_zero():
            del out[form]
    return reduce_class(basisdata, out)


def theta_on_coordinates(basisdata: CohomologyBasis, vec: list[RatFun]) -> list[RatFun]:
    """theta of a class given by coordinates: differentiate coefficients and
    add the Gauss-Manin matrix action."""
    n = basisdata.dimension
    out = [vec[i].theta() for i in range(n)]
    for j in range(n):
        c = vec[j]
        if c.is_zero():
            continue
        for i in range(n):
            g = basisdata.gm_matrix[i][j]
            if not g.is_zero():
                out[i] = out[i] + c * g
    return out


def minimal_operator(basisdata: CohomologyBasis, cls: CohomologyClass) -> OreOperator:
    """Monic generator of the annihilator of the class over Q(t)[theta].

    Iterates theta on the coordinate vector until the first linear
    dependence; the dependence coefficients are the operator.
    """
    v = reduce_class(basisdata, cls)
    if all(x.is_zero() for x in v):
        raise ZeroClass("class reduces to zero; annihilator is the unit ideal")
    iterates = [v]
    echelon: list[tuple[int, list[RatFun], list[RatFun]]] = []
    max_order = basisdata.dimension
    for r in range(max_order + 1):
        cur = iterates[-1]
        vec = list(cur)
        track = [RF_ZERO] * (max_order + 2)
        track[r] = RatFun.const(1)
        for lead, prow, ptrack in echelon:
            if not vec[lead].is_zero():
                f = vec[lead]
                vec = [x - f * y for x, y in zip(vec, prow)]
                track = [x - f * y for x, y in zip(track, ptrack)]
        leadpos = _first_nonzero(vec)
        if leadpos is None:
            # the reduced r-th iterate vanished, so sum_i track_i theta^i
            # annihilates the class; track[r] = 1 since earlier pivots only
            # involve lower iterates, hence the operator is already monic
            return OreOperator(tuple(track[: r + 1]))
        inv = vec[leadpos].inverse()
        vec = [inv * x for x in vec]
        track = [inv * x for x in track]
        echelon.append((leadpos, vec, track))
        iterates.append(theta_on_coordinates(basisdata, cur))
    raise DegenerateModel("no dependence found below the quotient dimension")


def weight_graded_dimension(basisdata: CohomologyBasis, weight_level: int) -> int:
    """Dimension of the weight space at the given level.

    Levels at or above 2d give the whole quotient; below that the space is
    spanned by the recorded cone points whose minimal-face codimension is
    smaller than level - d.
    """
    d = basisdata.model.d
    if weight_level <= d:
        return 0
    if weight_level >= 2 * d:
        return basisdata.dimension
    ell = weight_level - d
    vecs = []
    for form, vec in sorted(basisdata.coordinates.items()):
        if d - basisdata.face_dims[form] < ell:
            vecs.append(vec)
    return _ratfun_rank(vecs)


def _ratfun_rank(vectors) -> int:
    echelon: list[tuple[int, list[RatFun]]] = []
    for vec in vectors:
        out = list(vec)
        for lead, row in echelon:
            if not out[lead].is_zero():
                f = out[lead]
                out = [x - f * y for x, y in zip(out, row)]
        leadpos = _first_nonzero(out)
        if leadpos is None:
            continue
        inv = out[leadpos].inverse()
        echelon.append((leadpos, [inv * x for x in out]))
    return len(echelon)


def weight_theta_eigenvalues(model: ToricModel, form: MonomialForm) -> list[Fraction]:
    """Eigenvalues d_j of the torus theta actions modulo lower weight.

    For a form whose ray point lies on a proper face, d_j = -beta0 * mu_j
    where mu is the unique convex combination of the minimal face's vertices
    expressing beta/beta0 (vertices give a single mu = 1); d_j = 0 off the
    face.  Interior rays are rejected: their weight is already minimal.
    """
    beta0, beta = form
    P = model.polytope
    fd = P.minimal_face_dim(beta, beta0)
    if fd == P.dim:
        raise InteriorPoint(f"form {form} lies interior; no eigenvalue relation")
    mu = P.barycentric_on_face(beta, beta0)
    out = []
    for j in range(model.l):
        out.append(-Q(beta0) * mu.get(j, Q(0)))
    return out


def theta_t_eigenvalue(model: ToricModel, form: MonomialForm) -> Fraction:
    """The one-parameter eigenvalue c = sum_j k_j d_j."""
    d_list = weight_theta_eigenvalues(model, form)
    return sum(Q(kj) * dj for kj, dj in zip(model.k_vector, d_list))
