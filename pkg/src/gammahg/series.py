"""Power-series counterparts: hypergeometric coefficients, the multinomial
constant-term series of one-negative-entry vectors, and exact operator
annihilation checks on truncated series."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import MultipleNegativeEntries
from .gamma import GammaVector
from .ore import OreOperator
from .polys import Poly
from .toric import gamma_constant

Q = Fraction


@dataclass(frozen=True)
class TruncatedSeries:
    """Exact rational coefficients c_0 .. c_N of a power series in t."""

    coefficients: tuple[Fraction, ...]

    @property
    def truncation_order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients[i]

    def coefficient_strings(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coefficients]


def _pochhammer(x: Fraction, k: int) -> Fraction:
    out = Q(1)
    for i in range(k):
        out *= x + i
    return out


def hg_series(alpha, beta, n_terms: int) -> TruncatedSeries:
    """Coefficients prod (alpha_i)_k / prod (beta_i)_k for k = 0..n_terms."""
    alpha = [Q(a) for a in alpha]
    beta = [Q(b) for b in beta]
    if n_terms < 0:
        raise ValueError("truncation order must be nonnegative")
    coeffs = []
    num = Q(1)
    den = Q(1)
    for k in range(n_terms + 1):
        if k > 0:
            for a in alpha:
                num *= a + (k - 1)
            for b in beta:
                bb = b + (k - 1)
                if bb == 0:
                    raise ZeroDivisionError(
                        f"Pochhammer (beta={b})_{k} vanishes"
                    )
                den *= bb
        coeffs.append(num / den)
    return TruncatedSeries(tuple(coeffs))


def constant_term_series(g: GammaVector, n_terms: int) -> TruncatedSeries:
    """Constant terms of the powers of the normalised fibre polynomial.

    Requires exactly one negative entry gamma_1; the t^h coefficient is
    (-1)^(gamma_1 h) * multinomial(-gamma_1 h; gamma_2 h, ..., gamma_l h)
    times Gamma^h with Gamma = prod gamma_j^gamma_j.
    """
    negs = g.negatives()
    if len(negs) != 1:
        raise MultipleNegativeEntries(
            f"constant-term series needs exactly one negative entry, got {g}"
        )
    g1 = negs[0]
    pos = g.positives()
    gam = gamma_constant(g)
    coeffs = []
    for h in range(n_terms + 1):
        top = factorial(-g1 * h)
        bottom = 1
        for e in pos:
            bottom *= factorial(e * h)
        sign = -1 if (g1 * h) % 2 else 1
        coeffs.append(sign * Q(top, bottom) * gam**h)
    return TruncatedSeries(tuple(coeffs))


def apply_operator(op: OreOperator, s: TruncatedSeries) -> TruncatedSeries:
    """Apply a theta-form operator with polynomial-after-clearing coefficients.

    The operator is first scaled by the lcm of its coefficient denominators
    (a left unit).  In theta form a polynomial coefficient only shifts
    degrees upward, so every output coefficient up to the truncation order
    is computed exactly from known input coefficients.
    """
    den = Poly((1,))
    for c in op.coeffs:
        if not c.is_zero():
            gcd_p = den.gcd(c.den)
            den = den.exact_div(gcd_p) * c.den
    polys = [
        (c.num * den.exact_div(c.den)) if not c.is_zero() else Poly()
        for c in op.coeffs
    ]
    n = s.truncation_order
    out = [Q(0)] * (n + 1)
    for i, p in enumerate(polys):
        for r in range(p.degree + 1):
            pr = p[r]
            if pr == 0:
                continue
            for k in range(0, n + 1 - r):
                out[k + r] += pr * Q(k) ** i * s[k]
    return TruncatedSeries(tuple(out))


def annihilation_check(op: OreOperator, s: TruncatedSeries) -> bool:
    """True iff op annihilates the series through the truncation order."""
    if s.truncation_order < op.order + 5:
        raise ValueError("truncation too short: need at least order + 5 terms")
    result = apply_operator(op, s)
    return all(c == 0 for c in result.coefficients)
