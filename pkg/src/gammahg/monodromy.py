"""Levelt normal form: companion matrices and the monodromy triple.

Rigidity lets the whole representation be written down from the two
characteristic polynomials: h_infinity is the companion matrix of the
cancelled numerator of Q, h_0 the inverse companion of the denominator, and
h_1 is forced by the relation h_inf * h_1 * h_0 = id.  Everything is exact
over Q since the characteristic polynomials are products of cyclotomics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .gamma import GammaVector, family_parameter
from .linalg import q_identity, q_inverse, q_mat_mul, q_matrix, q_rank
from .polys import Poly

Q = Fraction


def companion(p: Poly) -> list[list[Fraction]]:
    """Companion matrix of a monic polynomial of degree >= 1."""
    if p.degree < 1:
        raise ValueError("companion matrix needs degree >= 1")
    if p.leading() != 1:
        raise ValueError("companion matrix needs a monic polynomial")
    n = p.degree
    m = [[Q(0)] * n for _ in range(n)]
    for i in range(1, n):
        m[i][i - 1] = Q(1)
    for i in range(n):
        m[i][n - 1] = -p[i]
    return m


@dataclass
class MonodromyTriple:
    h0: list[list[Fraction]]
    h1: list[list[Fraction]]
    hinf: list[list[Fraction]]

    @property
    def rank(self) -> int:
        return len(self.h0)

    def product_is_identity(self) -> bool:
        prod = q_mat_mul(q_mat_mul(self.hinf, self.h1), self.h0)
        return prod == q_identity(self.rank)

    def to_json_dict(self) -> dict:
        def ser(m):
            return [[f"{x.numerator}/{x.denominator}" for x in row] for row in m]

        return {"h0": ser(self.h0), "h1": ser(self.h1), "hinf": ser(self.hinf)}


def levelt_triple(g: GammaVector) -> MonodromyTriple:
    """Monodromy in Levelt normal form, following h_inf h_1 h_0 = id.

    h_inf = M_inf and h_0 = M_0^{-1} for the companion matrices of the
    cancelled numerator and denominator of the family parameter, so
    h_1 = M_inf^{-1} M_0.
    """
    fp = family_parameter(g)
    q_inf = fp.q_infinity()
    q_zero = fp.q_zero()
    m_inf = companion(q_inf)
    m_zero = companion(q_zero)
    hinf = m_inf
    h0 = q_inverse(m_zero)
    h1 = q_mat_mul(q_inverse(m_inf), m_zero)
    return MonodromyTriple(h0=h0, h1=h1, hinf=hinf)


def pseudoreflection_rank(m) -> int:
    """rank(m - id) over Q, exact."""
    a = q_matrix(m)
    n = len(a)
    for i in range(n):
        a[i][i] -= 1
    return q_rank(a)
