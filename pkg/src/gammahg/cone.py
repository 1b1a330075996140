"""Lattice points of the cone over the Newton polytope, with filtration tags.

A cone point (k, m) with k >= 1 and m in k*Delta indexes the monomial
x_0^k x^m.  Its Hodge level is the pole order k; its weight data is the
dimension of the smallest face of Delta containing m/k: the point belongs
to the weight ideal I^level exactly when its codimension is < level, and to
the Hodge space E^{-level} exactly when k <= level.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PointOutsideCone
from .toric import ToricModel


@dataclass(frozen=True, order=True)
class ConePoint:
    k: int
    m: tuple[int, ...]


@dataclass(frozen=True)
class FiltrationTag:
    hodge_level: int  # smallest level whose E-space contains the point: the pole order
    minimal_face_dim: int

    def in_weight_ideal(self, level: int, dim: int) -> bool:
        return dim - self.minimal_face_dim < level

    def in_hodge_space(self, level: int) -> bool:
        return self.hodge_level <= level


def enumerate_cone(model: ToricModel, max_pole: int) -> list[ConePoint]:
    """All cone points with 1 <= k <= max_pole, in (k, m)-lexicographic order."""
    if max_pole < 1:
        raise ValueError("max_pole must be >= 1")
    out = []
    P = model.polytope
    for k in range(1, max_pole + 1):
        for m in sorted(P.lattice_points(k)):
            out.append(ConePoint(k, m))
    return out


def classify(model: ToricModel, p: ConePoint) -> FiltrationTag:
    P = model.polytope
    if p.k < 1 or not P.contains(p.m, p.k):
        raise PointOutsideCone(f"({p.k}, {p.m}) is not in the cone")
    return FiltrationTag(p.k, P.minimal_face_dim(p.m, p.k))


def graded_generator_counts(model: ToricModel) -> dict[tuple[int, int], int]:
    """Counts of cone points with k <= d by (pole order, minimal face dim).

    These are generator counts for the filtration spaces, before quotienting
    by the reduction relations.
    """
    d = model.d
    counts: dict[tuple[int, int], int] = {}
    for p in enumerate_cone(model, d):
        tag = classify(model, p)
        key = (p.k, tag.minimal_face_dim)
        counts[key] = counts.get(key, 0) + 1
    return counts


def interior_count(model: ToricModel, k: int) -> int:
    """Number of lattice points interior to k*Delta."""
    P = model.polytope
    return sum(1 for m in P.lattice_points(k) if P.minimal_face_dim(m, k) == P.dim)
