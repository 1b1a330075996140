"""Gamma vectors and their translation to hypergeometric data.

A gamma vector is a list of nonzero integers summing to zero.  It encodes an
isomorphism class of rational hypergeometric local systems through the ratio
of products of cyclotomic polynomials obtained from its entries: negative
entries feed the numerator (giving the parameters alpha), positive entries
the denominator (giving beta).  Parameter representatives are normalised to
the half-open interval (0, 1], so the root 1 is represented by 1 rather
than 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InvalidEntry, ParseError, SumNotZero, TrivialSystem
from .polys import Poly, cyclotomic, euler_phi

Q = Fraction


@dataclass(frozen=True)
class GammaVector:
    entries: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.entries)

    @property
    def is_reduced(self) -> bool:
        """True when no two entries sum to zero."""
        negs = {}
        for e in self.entries:
            if e < 0:
                negs[-e] = negs.get(-e, 0) + 1
        for e in self.entries:
            if e > 0 and negs.get(e, 0) > 0:
                return False
        return True

    @property
    def is_prime(self) -> bool:
        g = 0
        for e in self.entries:
            g = gcd(g, e)
        return g == 1

    @property
    def gcd(self) -> int:
        g = 0
        for e in self.entries:
            g = gcd(g, e)
        return g

    def negatives(self) -> list[int]:
        return [e for e in self.entries if e < 0]

    def positives(self) -> list[int]:
        return [e for e in self.entries if e > 0]

    def negate(self) -> "GammaVector":
        return GammaVector(tuple(-e for e in self.entries))

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)


def make_gamma(entries) -> GammaVector:
    """Validate entries (all nonzero, sum zero, length >= 2)."""
    entries = tuple(int(e) for e in entries)
    if any(e == 0 for e in entries):
        raise InvalidEntry(f"gamma vector must have nonzero entries: {entries}")
    if len(entries) < 2:
        raise InvalidEntry("gamma vector needs at least two entries")
    if sum(entries) != 0:
        raise SumNotZero(f"entries sum to {sum(entries)}, expected 0")
    return GammaVector(entries)


def parse_gamma(text: str) -> GammaVector:
    """Parse the comma-separated textual format, e.g. ``-5,-2,3,4``."""
    try:
        entries = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ParseError(f"cannot parse gamma vector {text!r}: {exc}") from None
    if not entries:
        raise ParseError(f"empty gamma vector {text!r}")
    return make_gamma(entries)


def reduce(g: GammaVector) -> GammaVector:
    """Strip the maximal set of opposite pairs; preserves the represented Q."""
    pos: dict[int, int] = {}
    neg: dict[int, int] = {}
    for e in g.entries:
        (pos if e > 0 else neg)[abs(e)] = (pos if e > 0 else neg).get(abs(e), 0) + 1
    drop = {v: min(pos.get(v, 0), neg.get(v, 0)) for v in set(pos) | set(neg)}
    out = []
    used = {v: [0, 0] for v in drop}
    for e in g.entries:
        side = 0 if e > 0 else 1
        if used[abs(e)][side] < drop[abs(e)]:
            used[abs(e)][side] += 1
            continue
        out.append(e)
    if not out:
        raise TrivialSystem("gamma vector is a union of opposite pairs")
    return GammaVector(tuple(out))


def primify(g: GammaVector) -> GammaVector:
    """Append the smallest odd coprime pair when the entries share a factor.

    Appends (-(2m+1), 2m+1) for the least m >= 1 with gcd(2m+1, gcd(g)) = 1;
    this leaves the represented Q unchanged and makes the vector prime.
    """
    d = g.gcd
    if d == 1:
        return g
    m = 1
    while gcd(2 * m + 1, d) != 1:
        m += 1
    odd = 2 * m + 1
    return GammaVector(g.entries + (-odd, odd))


@dataclass(frozen=True)
class FamilyParameter:
    """Cyclotomic multiplicity data of Q = q_inf / q_0, fully cancelled."""

    numerator: tuple[tuple[int, int], ...]  # sorted (N, multiplicity) pairs
    denominator: tuple[tuple[int, int], ...]

    def num_dict(self) -> dict[int, int]:
        return dict(self.numerator)

    def den_dict(self) -> dict[int, int]:
        return dict(self.denominator)

    def q_infinity(self) -> Poly:
        p = Poly((1,))
        for n, m in self.numerator:
            for _ in range(m):
                p = p * cyclotomic(n)
        return p

    def q_zero(self) -> Poly:
        p = Poly((1,))
        for n, m in self.denominator:
            for _ in range(m):
                p = p * cyclotomic(n)
        return p

    @property
    def rank(self) -> int:
        return sum(m * euler_phi(n) for n, m in self.numerator)


def _divisor_multiset(values) -> dict[int, int]:
    out: dict[int, int] = {}
    for v in values:
        d = 1
        while d * d <= v:
            if v % d == 0:
                out[d] = out.get(d, 0) + 1
                if d != v // d:
                    out[v // d] = out.get(v // d, 0) + 1
            d += 1
    return out


def family_parameter(g: GammaVector) -> FamilyParameter:
    num = _divisor_multiset(-e for e in g.negatives())
    den = _divisor_multiset(g.positives())
    for n in sorted(set(num) & set(den)):
        c = min(num[n], den[n])
        num[n] -= c
        den[n] -= c
        if num[n] == 0:
            del num[n]
        if den[n] == 0:
            del den[n]
    if not num and not den:
        raise TrivialSystem(f"gamma vector {g} represents the trivial system")
    return FamilyParameter(
        tuple(sorted(num.items())), tuple(sorted(den.items()))
    )


@dataclass(frozen=True)
class HGParams:
    """Parameter multisets of the irreducible hypergeometric operator.

    Sorted tuples of rationals in (0, 1]; alpha and beta never share a value,
    which is exactly the irreducibility condition alpha_i - beta_j not in Z.
    """

    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]

    @property
    def rank(self) -> int:
        return len(self.alpha)


def _roots_of_unity_block(n: int) -> list[Fraction]:
    # j/N over 1 <= j <= N with gcd(j, N) = 1; N = 1 contributes the value 1
    return [Q(j, n) for j in range(1, n + 1) if gcd(j, n) == 1]


def hg_params(g: GammaVector) -> HGParams:
    fp = family_parameter(g)
    alpha: list[Fraction] = []
    for n, m in fp.numerator:
        alpha.extend(_roots_of_unity_block(n) * m)
    beta: list[Fraction] = []
    for n, m in fp.denominator:
        beta.extend(_roots_of_unity_block(n) * m)
    return HGParams(tuple(sorted(alpha)), tuple(sorted(beta)))


def rank(g: GammaVector) -> int:
    """Rank of the local system: degree of the cancelled numerator of Q."""
    return family_parameter(g).rank


def volume(g: GammaVector) -> int:
    """Sum of the positive entries (the normalised volume of the polytope)."""
    return sum(g.positives())
