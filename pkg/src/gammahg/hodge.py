"""Hodge numbers of the middle-weight primitive cohomology of the fibres.

The Hodge polynomial is computed purely combinatorially from the gamma
vector, by summing fractional parts of j*gamma_i/N over residues j coprime
to N.  Evaluating it at 1 recovers the rank of the local system, which the
test suite checks against the cyclotomic-degree computation in
:mod:`gammahg.gamma` (a disjoint code path).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotPrime
from .gamma import GammaVector
from .polys import Poly

Q = Fraction


def m_plus_minus(g: GammaVector, n: int) -> tuple[int, int]:
    """Counts (m+, m-) of positive/negative entries divisible by n."""
    if n < 1:
        raise ValueError("modulus must be a positive integer")
    m_plus = sum(1 for e in g.entries if e > 0 and e % n == 0)
    m_minus = sum(1 for e in g.entries if e < 0 and (-e) % n == 0)
    return m_plus, m_minus


def delta_n(g: GammaVector, n: int) -> Poly:
    """Sum of T^(sum of fractional parts of j*gamma_i/n) over j coprime to n.

    The representatives j run over 1 <= j <= n, so n = 1 contributes the
    single term T^0 = 1 (matching phi(1) = 1 in the rank identity; the sum
    over 1 <= j <= n-1 would wrongly vanish for n = 1).
    """
    if n < 1:
        raise ValueError("modulus must be a positive integer")
    from math import gcd

    counts: dict[int, int] = {}
    for j in range(1, n + 1):
        if gcd(j, n) != 1:
            continue
        s = 0
        for e in g.entries:
            s += (j * e) % n
        assert s % n == 0
        exp = s // n
        counts[exp] = counts.get(exp, 0) + 1
    if not counts:
        return Poly()
    deg = max(counts)
    return Poly(tuple(counts.get(i, 0) for i in range(deg + 1)))


def _geometric_block(m_plus: int, m_minus: int) -> Poly:
    # (T^m+ - T^m-)/(T - 1) = T^m- * (1 + T + ... + T^(m+ - m- - 1))
    return Poly((0,) * m_minus + (1,) * (m_plus - m_minus))


def hodge_polynomial(g: GammaVector) -> Poly:
    """Hodge polynomial of the weight-(l-3) piece, coefficients h^{i,k-i}
    attached to T^(i+1).

    Only n up to max |gamma_i| can contribute: larger n divide no entry.
    """
    if not g.is_prime:
        raise NotPrime(f"hodge polynomial needs a prime gamma vector, got {g}")
    out = Poly()
    for n in range(1, max(abs(e) for e in g.entries) + 1):
        mp, mm = m_plus_minus(g, n)
        if mp > mm:
            out = out + _geometric_block(mp, mm) * delta_n(g, n)
    return out


def hodge_numbers(g: GammaVector) -> list[tuple[int, int, int]]:
    """Unpack the Hodge polynomial into (p, q, h^{p,q}) triples, q = kappa - p."""
    kappa = g.length - 3
    poly = hodge_polynomial(g)
    out = []
    for p in range(kappa + 1):
        c = poly[p + 1]
        assert c.denominator == 1
        out.append((p, kappa - p, int(c)))
    return out


def hodge_report(g: GammaVector) -> dict:
    """JSON-shaped summary: gamma, kappa, Hodge numbers and the rank."""
    from .gamma import rank

    kappa = g.length - 3
    return {
        "gamma": list(g.entries),
        "kappa": kappa,
        "hodge": [{"p": p, "q": q, "h": h} for p, q, h in hodge_numbers(g)],
        "rank": rank(g),
    }
