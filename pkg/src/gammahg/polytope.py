"""Lattice polytopes with exact face lattices.

Sized for this problem domain: at most a dozen points in dimension <= 10,
so facet enumeration by hyperplane candidates is entirely adequate.  Facets
are stored as primitive integer inequalities <a, x> <= b; the minimal face
containing a rational point is the intersection of the facets tight at it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .linalg import det_bareiss, q_rank, q_solve

Q = Fraction


def _affine_rank(points) -> int:
    """Dimension of the affine span of a set of rational points."""
    if not points:
        return -1
    base = points[0]
    diffs = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    if not diffs:
        return 0
    return q_rank(diffs)


def _primitive(vec: list[int]) -> list[int]:
    g = 0
    for c in vec:
        g = gcd(g, c)
    return [c // g for c in vec] if g else vec


def _hyperplane_through(points, dim):
    """Primitive integer (a, b) with <a, p> = b for all points, if the span
    is exactly a hyperplane; None otherwise."""
    base = points[0]
    diffs = [[p[i] - base[i] for i in range(dim)] for p in points[1:]]
    if q_rank(diffs) != dim - 1:
        return None
    # integer normal: cofactor expansion along a rank-(dim-1) subset of rows
    rows = []
    for row in diffs:
        cand = rows + [row]
        if q_rank(cand) > len(rows):
            rows.append(row)
        if len(rows) == dim - 1:
            break
    normal = []
    for j in range(dim):
        sub = [[r[i] for i in range(dim) if i != j] for r in rows]
        sign = 1 if j % 2 == 0 else -1
        normal.append(sign * det_bareiss(sub))
    normal = _primitive(normal)
    b = sum(a * x for a, x in zip(normal, base))
    return normal, b


@dataclass(frozen=True)
class Face:
    """A face of the polytope: vertex indices plus the tight facet set."""

    vertex_indices: tuple[int, ...]
    dim: int
    tight_facets: tuple[int, ...]


@dataclass
class LatticePolytope:
    """Convex hull of integer points, with facet inequalities and face lattice.

    ``points`` keeps the generating points in their original order (for toric
    models these are the exponent vectors m_j); ``vertex_indices`` marks which
    of them are vertices of the hull.
    """

    points: list[tuple[int, ...]]
    dim: int = field(init=False)
    facets: list[tuple[tuple[int, ...], int]] = field(init=False)  # (a, b): <a,x> <= b
    vertex_indices: list[int] = field(init=False)
    faces_by_dim: dict[int, list[Face]] = field(init=False)

    def __post_init__(self):
        pts = self.points
        ambient = len(pts[0])
        self.dim = _affine_rank(pts)
        if self.dim != ambient:
            raise ValueError(
                f"polytope is not full-dimensional (dim {self.dim} in R^{ambient})"
            )
        self.facets = self._enumerate_facets()
        self.vertex_indices = self._find_vertices()
        self.faces_by_dim = self._build_face_lattice()

    # -- construction ---------------------------------------------------------

    def _enumerate_facets(self):
        d = self.dim
        pts = self.points
        seen = set()
        facets = []
        for combo in combinations(range(len(pts)), d):
            hp = _hyperplane_through([pts[i] for i in combo], d)
            if hp is None:
                continue
            a, b = hp
            vals = [sum(ai * x for ai, x in zip(a, p)) - b for p in pts]
            if all(v <= 0 for v in vals):
                pass
            elif all(v >= 0 for v in vals):
                a, b = [-c for c in a], -b
            else:
                continue
            key = (tuple(a), b)
            if key not in seen:
                seen.add(key)
                facets.append((tuple(a), b))
        return facets

    def _find_vertices(self):
        out = []
        for i, p in enumerate(self.points):
            tight = self._tight_facets(p)
            if len(tight) >= self.dim and _affine_rank(
                [q for q in self.points if all(self._is_tight(f, q) for f in tight)]
            ) == 0:
                out.append(i)
        return out

    def _is_tight(self, facet_index: int, point) -> bool:
        a, b = self.facets[facet_index]
        return sum(ai * x for ai, x in zip(a, point)) == b

    def _tight_facets(self, point) -> tuple[int, ...]:
        return tuple(
            i for i in range(len(self.facets)) if self._is_tight(i, point)
        )

    def _build_face_lattice(self):
        # faces = closure of facet point-sets under intersection
        pts = self.points
        nf = len(self.facets)
        facet_sets = []
        for i in range(nf):
            facet_sets.append(
                frozenset(j for j, p in enumerate(pts) if self._is_tight(i, p))
            )
        closed = set(facet_sets)
        frontier = set(facet_sets)
        while frontier:
            new = set()
            for s in frontier:
                for f in facet_sets:
                    inter = s & f
                    if inter and inter not in closed:
                        new.add(inter)
            closed |= new
            frontier = new
        by_dim: dict[int, list[Face]] = {self.dim: [
            Face(tuple(sorted(self.vertex_indices)), self.dim, ())
        ]}
        for s in closed:
            members = sorted(s)
            verts = tuple(i for i in members if i in set(self.vertex_indices))
            dim = _affine_rank([pts[i] for i in members])
            tight = tuple(
                i for i in range(nf) if all(self._is_tight(i, pts[j]) for j in members)
            )
            by_dim.setdefault(dim, []).append(Face(verts, dim, tight))
        for faces in by_dim.values():
            faces.sort(key=lambda f: f.vertex_indices)
        return by_dim

    # -- queries ---------------------------------------------------------------

    def proper_faces(self):
        for dim in sorted(self.faces_by_dim):
            if dim == self.dim:
                continue
            yield from self.faces_by_dim[dim]

    def contains(self, point, scale: int = 1) -> bool:
        """Exact membership of ``point`` in ``scale * polytope``."""
        for a, b in self.facets:
            if sum(ai * Q(x) for ai, x in zip(a, point)) > scale * b:
                return False
        return True

    def minimal_face_dim(self, point, scale: int = 1) -> int:
        """Dimension of the smallest face of the polytope containing
        ``point/scale`` (the polytope itself counts, giving ``self.dim``)."""
        tight = []
        for i, (a, b) in enumerate(self.facets):
            v = sum(ai * Q(x) for ai, x in zip(a, point))
            if v > scale * b:
                raise ValueError("point lies outside the polytope")
            if v == scale * b:
                tight.append(i)
        if not tight:
            return self.dim
        members = [
            p
            for p in self.points
            if all(self._is_tight(i, p) for i in tight)
        ]
        return _affine_rank(members)

    def minimal_face_vertices(self, point, scale: int = 1) -> list[int]:
        """Indices (into ``points``) of the vertices of the minimal face."""
        tight = []
        for i, (a, b) in enumerate(self.facets):
            v = sum(ai * Q(x) for ai, x in zip(a, point))
            if v > scale * b:
                raise ValueError("point lies outside the polytope")
            if v == scale * b:
                tight.append(i)
        if not tight:
            return list(self.vertex_indices)
        vset = set(self.vertex_indices)
        return [
            j
            for j, p in enumerate(self.points)
            if j in vset and all(self._is_tight(i, p) for i in tight)
        ]

    @property
    def is_simplex(self) -> bool:
        return len(self.vertex_indices) == self.dim + 1

    def interior_point_indices(self) -> list[int]:
        """Generating points lying strictly inside the polytope."""
        out = []
        for i, p in enumerate(self.points):
            if not self._tight_facets(p):
                out.append(i)
        return out

    def lattice_points(self, scale: int = 1) -> list[tuple[int, ...]]:
        """All lattice points of ``scale * polytope`` (bounding-box scan)."""
        d = self.dim
        los = [min(p[i] for p in self.points) * scale for i in range(d)]
        his = [max(p[i] for p in self.points) * scale for i in range(d)]

        out = []

        def rec(i, prefix):
            if i == d:
                if self.contains(prefix, scale):
                    out.append(tuple(prefix))
                return
            for x in range(los[i], his[i] + 1):
                rec(i + 1, prefix + [x])

        rec(0, [])
        return out

    def barycentric_on_face(self, point, scale: int = 1) -> dict[int, Fraction]:
        """Write point/scale as the unique convex combination of the vertices
        of its minimal face; returns {point index: coefficient}."""
        verts = self.minimal_face_vertices(point, scale)
        d = len(self.points[0])
        # rows: affine system sum mu_j = 1, sum mu_j m_j = point/scale
        mat = [[Q(1)] * len(verts)]
        rhs = [Q(1)]
        for i in range(d):
            mat.append([Q(self.points[j][i]) for j in verts])
            rhs.append(Q(point[i], scale))
        # least-structure exact solve: the system has a unique solution on the
        # minimal face (its vertices are affinely independent)
        cols = len(verts)
        aug = [row + [rhs[i]] for i, row in enumerate(mat)]
        pivots = []
        r = 0
        for c in range(cols):
            piv = None
            for i in range(r, len(aug)):
                if aug[i][c] != 0:
                    piv = i
                    break
            if piv is None:
                continue
            aug[r], aug[piv] = aug[piv], aug[r]
            inv = 1 / aug[r][c]
            aug[r] = [x * inv for x in aug[r]]
            for i in range(len(aug)):
                if i != r and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
            pivots.append(c)
            r += 1
        assert len(pivots) == cols, "face vertices not affinely independent"
        for i in range(r, len(aug)):
            assert aug[i][cols] == 0, "inconsistent barycentric system"
        sol = [aug[pivots.index(c)][cols] for c in range(cols)]
        return {verts[i]: sol[i] for i in range(cols)}
