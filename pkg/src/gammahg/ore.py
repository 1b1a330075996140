"""Noncommutative operator algebra in theta = t d/dt over Q(t).

Operators are stored as coefficient lists in theta powers with the
coefficients written on the left, so left multiplication by a rational
function simply rescales the list.  The commutation rule is
theta * a(t) = a(t) * theta + t * a'(t).

Besides the ring operations the module builds hypergeometric operators,
the reduced one-variable operators coming from the torus actions on the
coefficients (with their parameter lists), and provides local exponents
and a bounded-order Frobenius probe for the singularity at t = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .errors import ParseError, Unsupported
from .gamma import GammaVector
from .linalg import q_solve
from .polys import (
    P_ONE,
    Poly,
    RF_ONE,
    RF_ZERO,
    RatFun,
    poly_from_str,
    poly_str,
)
from .toric import ToricModel

Q = Fraction


class OreOperator:
    """Element of Q(t)[theta]: coefficient i multiplies theta^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, RatFun) else RatFun.const(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("OreOperator is immutable")

    @staticmethod
    def theta_plus(c) -> "OreOperator":
        """The order-one operator theta + c for a rational constant c."""
        return OreOperator((RatFun.const(c), RF_ONE))

    @staticmethod
    def const(c) -> "OreOperator":
        return OreOperator((RatFun.const(c),))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> RatFun:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RF_ZERO

    def __eq__(self, other):
        return isinstance(other, OreOperator) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Ore", self.coeffs))

    def __add__(self, other: "OreOperator") -> "OreOperator":
        n = max(len(self.coeffs), len(other.coeffs))
        return OreOperator(tuple(self[i] + other[i] for i in range(n)))

    def __neg__(self):
        return OreOperator(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def left_scale(self, u: RatFun) -> "OreOperator":
        """u * self for u in Q(t): rescales every coefficient."""
        return OreOperator(tuple(u * c for c in self.coeffs))

    def __mul__(self, other: "OreOperator") -> "OreOperator":
        # theta^i * b = sum_k C(i, k) theta^k(b) theta^(i-k)
        out: dict[int, RatFun] = {}
        for j, b in enumerate(other.coeffs):
            if b.is_zero():
                continue
            derivs = [b]
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                while len(derivs) <= i:
                    derivs.append(derivs[-1].theta())
                for k in range(i + 1):
                    term = a * derivs[k]
                    if term.is_zero():
                        continue
                    if k:
                        term = term * RatFun.const(comb(i, k))
                    idx = i - k + j
                    out[idx] = out.get(idx, RF_ZERO) + term
        if not out:
            return OreOperator()
        n = max(out)
        return OreOperator(tuple(out.get(i, RF_ZERO) for i in range(n + 1)))

    def monic(self) -> "OreOperator":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return self.left_scale(lead.inverse())

    def right_divide(self, b: "OreOperator") -> tuple["OreOperator", "OreOperator"]:
        """(q, r) with self = q*b + r and order(r) < order(b)."""
        if b.is_zero():
            raise ZeroDivisionError("right division by the zero operator")
        rem = self
        q = OreOperator()
        while not rem.is_zero() and rem.order >= b.order:
            shift = rem.order - b.order
            # (c * theta^shift) * b has leading coefficient c * lead(b):
            # theta^shift commutes into b's leading coefficient only up to
            # derivative terms of lower order, so the lead is exact.
            c = rem.coeffs[-1] / b.coeffs[-1]
            term = OreOperator((RF_ZERO,) * shift + (c,))
            q = q + term
            rem = rem - term * b
        return q, rem

    def equal_up_to_left_unit(self, other: "OreOperator") -> bool:
        return self.monic() == other.monic()

    # -- serialisation -------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form: sum of ``(num)/(den)*TH^i`` terms.

        num, den are coprime integer-coefficient polynomials with den having
        a positive leading coefficient; round-trips bit-exactly.
        """
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            pn, pd = c.int_pair()
            num = poly_str(Poly(tuple(pn)))
            den = poly_str(Poly(tuple(pd)))
            parts.append(f"({num})/({den})*TH^{i}")
        return " + ".join(parts)

    @staticmethod
    def from_text(text: str) -> "OreOperator":
        import re

        text = text.strip()
        if text == "0":
            return OreOperator()
        pattern = re.compile(r"\(([^()]*)\)/\(([^()]*)\)\*TH\^(\d+)")
        matches = list(pattern.finditer(text))
        if not matches:
            raise ParseError(f"malformed operator text {text!r}")
        rebuilt = " + ".join(m.group(0) for m in matches)
        if rebuilt != text:
            raise ParseError(f"malformed operator text {text!r}")
        coeffs: dict[int, RatFun] = {}
        for m in matches:
            try:
                num = poly_from_str(m.group(1))
                den = poly_from_str(m.group(2))
            except ValueError as exc:
                raise ParseError(f"malformed term {m.group(0)!r}: {exc}") from None
            i = int(m.group(3))
            if i in coeffs:
                raise ParseError(f"repeated power TH^{i}")
            coeffs[i] = RatFun(num, den)
        n = max(coeffs)
        return OreOperator(tuple(coeffs.get(i, RF_ZERO) for i in range(n + 1)))

    def to_json_list(self) -> list[str]:
        """Coefficient strings ``(num)/(den)`` indexed by theta power."""
        out = []
        for c in self.coeffs:
            pn, pd = c.int_pair()
            out.append(f"({poly_str(Poly(tuple(pn)))})/({poly_str(Poly(tuple(pd)))})")
        return out

    @staticmethod
    def from_json_list(items) -> "OreOperator":
        import re

        coeffs = []
        for s in items:
            m = re.fullmatch(r"\(([^()]*)\)/\(([^()]*)\)", s.strip())
            if m is None:
                raise ParseError(f"malformed coefficient {s!r}")
            try:
                coeffs.append(RatFun(poly_from_str(m.group(1)), poly_from_str(m.group(2))))
            except ValueError as exc:
                raise ParseError(f"malformed coefficient {s!r}: {exc}") from None
        return OreOperator(tuple(coeffs))

    def __repr__(self):
        return f"OreOperator({self.to_text()!r})"


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def product_of_linear(constants) -> OreOperator:
    """prod (theta + c) over the given rational constants (order = count)."""
    out = OreOperator((RF_ONE,))
    for c in constants:
        out = out * OreOperator.theta_plus(c)
    return out


def build_hypergeometric(alpha, beta) -> OreOperator:
    """prod(theta + beta_i - 1) - t * prod(theta + alpha_i)."""
    alpha = [Q(a) for a in alpha]
    beta = [Q(b) for b in beta]
    if not alpha or len(alpha) != len(beta):
        raise ValueError("alpha and beta must be nonempty of equal length")
    left = product_of_linear(b - 1 for b in beta)
    right = product_of_linear(alpha).left_scale(RatFun(Poly((0, 1))))
    return left - right


@dataclass(frozen=True)
class GKZParams:
    """Parameters of the reduced torus-action operator (not taken mod Z)."""

    alpha_eta: tuple[Fraction, ...]
    beta_eta: tuple[Fraction, ...]
    eta: tuple[int, ...]


def solve_eta(model: ToricModel, form: tuple[int, tuple[int, ...]]) -> list[int]:
    """The unique integer vector with A * eta = (-beta0, -beta, 0)."""
    beta0, beta = form
    rhs = [-beta0] + [-b for b in beta] + [0]
    sol = q_solve([list(r) for r in model.A], rhs)
    out = []
    for x in sol:
        assert x.denominator == 1, "eta must be integral for a unimodular model"
        out.append(int(x))
    return out


def gkz_parameters(g: GammaVector, eta) -> GKZParams:
    eta = [int(x) for x in eta]
    if len(eta) != g.length:
        raise ValueError("eta must have one entry per gamma entry")
    alpha = []
    beta = []
    for gi, ei in zip(g.entries, eta):
        if gi < 0:
            for j in range(-gi):
                alpha.append(Q(ei - j, gi))
        else:
            for j in range(gi):
                beta.append(Q(ei - j, gi) + 1)
    return GKZParams(tuple(sorted(alpha)), tuple(sorted(beta)), tuple(eta))


def build_gkz_operator(g: GammaVector, eta) -> tuple[OreOperator, GKZParams]:
    """The reduced operator along z = u^gamma, rewritten at z = Gamma*t and
    normalised by Gamma: prod over positive entries of (theta + (eta_i-j)/gamma_i)
    minus t times the product over negative entries.

    Its order is the volume of gamma and its parameter lists are alpha_eta
    (shifted by nothing) and beta_eta (shifted by one), exactly the inputs of
    ``build_hypergeometric``.
    """
    params = gkz_parameters(g, eta)
    return build_hypergeometric(params.alpha_eta, params.beta_eta), params


def cancel_parameters(alpha, beta) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Greedily remove pairs differing by an integer, one class at a time.

    Within each residue class both sides are sorted ascending and the excess
    entries of the longer side survive (smallest representatives dropped
    first); only the residue-class counts are canonical, the choice here
    fixes a deterministic representative.
    """
    alpha = sorted(Q(a) for a in alpha)
    beta = sorted(Q(b) for b in beta)
    by_class_a: dict[Fraction, list[Fraction]] = {}
    by_class_b: dict[Fraction, list[Fraction]] = {}
    for a in alpha:
        by_class_a.setdefault(a - a.__floor__(), []).append(a)
    for b in beta:
        by_class_b.setdefault(b - b.__floor__(), []).append(b)
    out_a: list[Fraction] = []
    out_b: list[Fraction] = []
    for cls in set(by_class_a) | set(by_class_b):
        xa = by_class_a.get(cls, [])
        xb = by_class_b.get(cls, [])
        k = min(len(xa), len(xb))
        out_a.extend(xa[k:])
        out_b.extend(xb[k:])
    return tuple(sorted(out_a)), tuple(sorted(out_b))


# ---------------------------------------------------------------------------
# local data at the singular points
# ---------------------------------------------------------------------------


def _cleared_int_coeffs(op: OreOperator) -> list[Poly]:
    """Scale by a common denominator and t-power so all coefficients are
    polynomials with min valuation zero (a left unit, harmless)."""
    den = P_ONE
    for c in op.coeffs:
        if not c.is_zero():
            g = den.gcd(c.den)
            den = den.exact_div(g) * c.den
    polys = [c.num * den.exact_div(c.den) if not c.is_zero() else Poly() for c in op.coeffs]
    v = min((p.valuation() for p in polys if not p.is_zero()), default=0)
    return [p.shift_down(v) if not p.is_zero() else p for p in polys]


def indicial_polynomial_at_zero(op: OreOperator) -> Poly:
    """The polynomial sum_i a_i(0) x^i after clearing denominators/t-powers.

    Raises ``Unsupported`` when t=0 is an irregular singular point, detected
    by the leading coefficient not attaining the minimal valuation.
    """
    if op.is_zero():
        raise ValueError("zero operator")
    polys = _cleared_int_coeffs(op)
    chi = Poly(tuple(p[0] for p in polys))
    if chi.degree < op.order:
        raise Unsupported("irregular singularity at t = 0")
    return chi


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots with multiplicity; raises Unsupported if the
    residual factor is nonconstant (irrational or complex roots)."""
    ints, _ = p.to_int_scaled()
    work = Poly(tuple(ints))
    v = work.valuation()
    roots = [Q(0)] * v
    work = work.shift_down(v)
    while work.degree >= 1:
        ints, _ = work.to_int_scaled()
        a0, an = abs(ints[0]), abs(ints[-1])
        found = None
        for pdiv in _divisors_signed(a0):
            for qdiv in _divisors_pos(an):
                if gcd(abs(pdiv), qdiv) != 1:
                    continue
                cand = Q(pdiv, qdiv)
                if work(cand) == 0:
                    found = cand
                    break
            if found is not None:
                break
        if found is None:
            raise Unsupported(f"non-rational roots remain in {poly_str(work, 'x')}")
        roots.append(found)
        work = work.exact_div(Poly((-found, 1)))
    return sorted(roots)


def _divisors_pos(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _divisors_signed(n: int) -> list[int]:
    if n == 0:
        return [0]
    pos = _divisors_pos(n)
    return [x for d in pos for x in (d, -d)]


def local_exponents_at_zero(op: OreOperator) -> list[Fraction]:
    """Roots of the indicial polynomial at t = 0, sorted with multiplicity.

    For the hypergeometric operator these are the values 1 - beta_i.
    """
    return rational_roots(indicial_polynomial_at_zero(op))


def shift_to_one(op: OreOperator) -> OreOperator:
    """Rewrite in the local variable s = t - 1 with V = s d/ds.

    Substitutes theta = ((1+s)/s) * V and expands in the Ore ring over Q(s)
    (same commutation rule); coefficients are then rational functions in s.
    """
    b = OreOperator((RF_ZERO, RatFun(Poly((1, 1)), Poly((0, 1)))))  # ((1+s)/s) V
    shift = Poly((1, 1))
    out = OreOperator()
    for i in range(op.order, -1, -1):
        c = op[i]
        num = c.num.compose(shift)
        den = c.den.compose(shift)
        out = out * b + OreOperator((RatFun(num, den),))
    return out


def apparent_singularity_probe(op: OreOperator, jet_order: int = 50) -> str:
    """Semi-decision for the singularity of the solutions at t = 1.

    Returns ``"genuine"`` when a non-integer local exponent exists or when
    no full basis of logarithm-free power-series jets of the requested order
    exists; returns ``"possibly_apparent"`` otherwise (a bounded-order
    certificate only: genuine apparent-point certification is out of scope).
    """
    n = op.order
    if jet_order < n:
        raise ValueError("jet_order must be at least the operator order")
    local = shift_to_one(op)
    polys = _cleared_int_coeffs(local)
    if Poly(tuple(p[0] for p in polys)).degree < local.order:
        raise Unsupported("irregular singularity at t = 1")
    chi = Poly(tuple(p[0] for p in polys))
    try:
        roots = rational_roots(chi)
    except Unsupported:
        return "genuine"
    if any(r.denominator != 1 for r in roots):
        return "genuine"
    e_min = min(int(r) for r in roots)
    # jets y = sum c_j s^(e_min + j): row j is the coefficient of s^(e_min + j)
    maxdeg = max(p.degree for p in polys)
    big_n = jet_order
    rows = []
    for j in range(big_n + 1):
        row = [Q(0)] * (big_n + 1)
        for r in range(0, min(j, maxdeg) + 1):
            x = Q(e_min + j - r)
            val = sum(polys[i][r] * x**i for i in range(len(polys)))
            row[j - r] = val
        rows.append(row)
    from .linalg import q_rank

    dim = (big_n + 1) - q_rank(rows)
    return "possibly_apparent" if dim >= n else "genuine"
