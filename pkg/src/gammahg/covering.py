"""Irreducibility toolkit for the fibres.

Two ingredients: a lattice primitivity test (the difference vectors of the
exponents must span the full lattice, ruling out a dilated polytope), and,
for quadrilateral gamma vectors of length four, the explicit two-variable
covering curve h_1(y_1) + h_2(y_2) whose exponent pattern satisfies the
coprimality and distinct-degree conditions.  Only those stated numeric
conditions are checked here: the covering property itself rests on a
citation and is not re-verified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NotQuadrilateral, OppositePair
from .gamma import GammaVector
from .linalg import invariant_factors
from .polys import Poly

Q = Fraction


def lattice_primitivity(m_columns) -> bool:
    """True iff the differences m_j - m_1 span the full integer lattice."""
    cols = [list(m) for m in m_columns]
    base = cols[0]
    d = len(base)
    diff = [[c[i] - base[i] for c in cols[1:]] for i in range(d)]
    return invariant_factors(diff) == [1] * d


@dataclass(frozen=True)
class CoveringData:
    normalized_gamma: tuple[int, int, int, int]
    permutation: tuple[int, int, int, int]  # slot i holds original index perm[i]
    sign_flipped: bool
    case: str  # "distinct_degrees" | "equal_degrees"
    # per coefficient slot (after normalisation): (variable 1 or 2, exponent)
    exponents: tuple[tuple[int, int], ...]
    a: int
    A: int
    b: int
    B: int
    c: int

    def degree_pair(self) -> tuple[int, int]:
        d1 = max(e for v, e in self.exponents if v == 1)
        d2 = max(e for v, e in self.exponents if v == 2)
        return d1, d2

    def conditions(self) -> dict:
        y1 = sorted(e for v, e in self.exponents if v == 1)
        y2 = sorted(e for v, e in self.exponents if v == 2)
        d1, d2 = self.degree_pair()
        return {
            "coprime_y1": gcd(*y1) == 1,
            "coprime_y2": gcd(*y2) == 1,
            "degrees_distinct": d1 != d2,
            "c_integral": True,  # enforced at construction
        }

    def to_json_dict(self) -> dict:
        return {
            "normalized_gamma": list(self.normalized_gamma),
            "permutation": list(self.permutation),
            "sign_flipped": self.sign_flipped,
            "case": self.case,
            "covering_exponents": {
                f"u{i + 1}": {"variable": v, "exponent": e}
                for i, (v, e) in enumerate(self.exponents)
            },
            "conditions": self.conditions(),
        }


def quadrilateral_covering(g: GammaVector) -> CoveringData:
    """Normalise a two-negative/two-positive length-4 vector and produce the
    covering exponent pattern.

    After reordering (and possibly negating) so that
    |g_1| < g_3 <= g_4 < |g_2| with g_1, g_2 < 0, set d_ij = gcd(|g_i|, |g_j|),
    a = -g_1/d_14, A = g_4/d_14, b = g_3/d_23, B = -g_2/d_23.  When A != B the
    pattern is (y_1^A, y_2^b, y_2^B, y_1^a); when A = B = n it is built from
    d = gcd(n-a, n-b) and e = gcd(a, b) as
    (y_1^(b(n-a)/de), y_2^((n-b)/d), y_1^(a(n-b)/de), y_2^((n-a)/d)).
    """
    if g.length != 4:
        raise NotQuadrilateral(f"need a length-4 gamma vector, got {g}")
    negs = [(e, i) for i, e in enumerate(g.entries) if e < 0]
    poss = [(e, i) for i, e in enumerate(g.entries) if e > 0]
    if len(negs) != 2 or len(poss) != 2:
        raise NotQuadrilateral(
            f"need two negative and two positive entries, got {g}"
        )
    for e, _ in poss:
        if any(-e == en for en, _ in negs):
            raise OppositePair(f"{g} contains an opposite pair")
    flip = min(-e for e, _ in negs) > min(e for e, _ in poss)
    if flip:
        entries = [(-e, i) for e, i in poss]  # negatives of the flipped vector
        pos_entries = [(-e, i) for e, i in negs]
        negs, poss = entries, pos_entries
    negs.sort(key=lambda t: -t[0])  # ascending absolute value
    poss.sort()
    (g1, i1), (g2, i2) = negs
    (g3, i3), (g4, i4) = poss
    assert -g1 < g3 <= g4 < -g2
    perm = (i1, i2, i3, i4)
    d14 = gcd(-g1, g4)
    d23 = gcd(-g2, g3)
    a = -g1 // d14
    big_a = g4 // d14
    b = g3 // d23
    big_b = -g2 // d23
    assert gcd(a, big_a) == 1 and gcd(b, big_b) == 1 and a < big_a and b < big_b
    assert (big_a - a) % d23 == 0 and (big_b - b) % d14 == 0, "c not integral"
    c = (big_a - a) // d23
    assert c == (big_b - b) // d14
    if big_a != big_b:
        case = "distinct_degrees"
        exps = ((1, big_a), (2, b), (2, big_b), (1, a))
    else:
        n = big_a
        assert a < b, "equal-degree case requires a < b"
        d = gcd(n - a, n - b)
        e = gcd(a, b)
        case = "equal_degrees"
        exps = (
            (1, b * (n - a) // (d * e)),
            (2, (n - b) // d),
            (1, a * (n - b) // (d * e)),
            (2, (n - a) // d),
        )
    return CoveringData(
        normalized_gamma=(g1, g2, g3, g4),
        permutation=perm,
        sign_flipped=flip,
        case=case,
        exponents=exps,
        a=a,
        A=big_a,
        b=b,
        B=big_b,
        c=c,
    )


def indecomposable_brute(m: int, n: int) -> bool:
    """Decide whether x^m + x^n (m > n > 0, coprime) admits a functional
    decomposition g(h(x)) with both degrees >= 2.

    Exhaustive over degree splittings of m: for each factorisation m = p*q,
    the inner polynomial can be normalised monic with zero constant term and
    is then forced coefficient by coefficient; the outer one likewise.  The
    decomposition exists iff the forced candidate reproduces the polynomial.
    Bounded at m <= 24 (desk scale).
    """
    if not (m > n > 0):
        raise ValueError("need m > n > 0")
    if gcd(m, n) != 1:
        raise ValueError("need gcd(m, n) = 1")
    if m > 24:
        raise ValueError("degree bound exceeded (m <= 24)")
    f = Poly((0,) * n + (1,) + (0,) * (m - n - 1) + (1,))
    for q in range(2, m):
        if m % q != 0:
            continue
        p = m // q
        if p < 2:
            continue
        if _decomposes_with_inner_degree(f, p, q):
            return False
    return True


def _decomposes_with_inner_degree(f: Poly, p: int, q: int) -> bool:
    """Is f = g(h) with deg g = p, deg h = q, h monic and h(0) = 0?

    The top q-1 coefficients of f force h; then g is forced by peeling
    powers of h from the top.  f is assumed monic of degree p*q.
    """
    m = p * q
    h = [Q(0)] * (q + 1)
    h[q] = Q(1)
    # determine h_{q-1}, ..., h_1 from coefficients x^{m-1} .. x^{m-q+1} of h^p
    for j in range(1, q):
        hp = _poly_power(Poly(tuple(h)), p)
        # coefficient of x^(m-j) in h^p is p*h_{q-j} + (terms in higher h's)
        diff = f[m - j] - hp[m - j]
        h[q - j] = h[q - j] + diff / p
    hpoly = Poly(tuple(h))
    # peel: g = sum b_i x^i determined from the x^{i q} coefficients downward
    rem = f
    g_coeffs = [Q(0)] * (p + 1)
    hpow = [Poly((1,))]
    for _ in range(p):
        hpow.append(hpow[-1] * hpoly)
    for i in range(p, -1, -1):
        g_coeffs[i] = rem[i * q]
        rem = rem - hpow[i].scale(g_coeffs[i])
    return rem.is_zero()


def _poly_power(p: Poly, e: int) -> Poly:
    out = Poly((1,))
    base = p
    while e:
        if e & 1:
            out = out * base
        base = base * base
        e >>= 1
    return out
