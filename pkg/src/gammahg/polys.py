"""Exact univariate polynomials and rational functions in ``t`` over Q.

Polynomials are dense (tuple of ``Fraction`` coefficients indexed by degree);
rational functions are stored fully cancelled with a monic denominator, so
structural equality coincides with mathematical equality.  Everything here is
immutable and hashable.

The module also provides cyclotomic polynomials (memoized, computed by exact
division of ``T^N - 1``) and a handful of integer-polynomial helpers used by
the fraction-free linear algebra elsewhere in the package.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import gcd

Q = Fraction

# ---------------------------------------------------------------------------
# integer polynomial helpers (little-endian int lists, trailing zeros stripped)
# ---------------------------------------------------------------------------


def itrim(p: list[int]) -> list[int]:
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return p[:n]


def iadd(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return itrim(out)


def ineg(a: list[int]) -> list[int]:
    return [-c for c in a]


def isub(a: list[int], b: list[int]) -> list[int]:
    return iadd(a, ineg(b))


def imul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return itrim(out)


def icontent(a: list[int]) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def iprimitive(a: list[int]) -> list[int]:
    """Divide out the integer content; sign is normalised to a positive lead."""
    a = itrim(a)
    if not a:
        return []
    g = icontent(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def ipseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b (b nonzero), exact over Z."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        a = [c * lb for c in a]
        shift = da - db
        for i, c in enumerate(b):
            a[i + shift] -= la * c
        a = itrim(a)
    return a


def igcd_poly(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd in Z[t] via the primitive PRS, positive leading coeff."""
    a, b = iprimitive(a), iprimitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = iprimitive(ipseudo_rem(a, b))
        a, b = b, r
    return a


def itheta(a: list[int]) -> list[int]:
    """t * d/dt on an integer polynomial (degree-preserving)."""
    return itrim([i * c for i, c in enumerate(a)])


# ---------------------------------------------------------------------------
# Poly: dense polynomial over Q
# ---------------------------------------------------------------------------


class Poly:
    """Dense univariate polynomial with exact rational coefficients.

    ``Poly((c0, c1, ...))`` represents ``c0 + c1*t + ...``; the zero
    polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Q(c) for c in coeffs]
        n = len(cs)
        while n and cs[n - 1] == 0:
            n -= 1
        object.__setattr__(self, "coeffs", tuple(cs[:n]))

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(c) -> "Poly":
        return Poly((Q(c),))

    @staticmethod
    def monomial(n: int, c=1) -> "Poly":
        return Poly((0,) * n + (Q(c),))

    @staticmethod
    def from_int_list(a: list[int]) -> "Poly":
        return Poly(tuple(a))

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Q(0)
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Q(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Q(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = Q(c)
        if c == 0:
            return Poly()
        return Poly(tuple(x * c for x in self.coeffs))

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.leading()
        q = [Q(0)] * max(0, len(rem) - db)
        while len(rem) - 1 >= db and rem:
            da = len(rem) - 1
            f = rem[-1] / lb
            q[da - db] = f
            for i, c in enumerate(other.coeffs):
                rem[da - db + i] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(q), Poly(rem)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd, computed via the primitive PRS over Z."""
        ia, _ = self.to_int_scaled()
        ib, _ = other.to_int_scaled()
        g = igcd_poly(ia, ib)
        if not g:
            return Poly()
        gp = Poly(tuple(g))
        return gp.scale(Q(1) / gp.leading())

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(Q(1) / self.leading())

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i >= 1))

    def theta(self) -> "Poly":
        """Apply t*d/dt; multiplies the degree-i coefficient by i."""
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs)))

    def __call__(self, x):
        acc = Q(0) if not isinstance(x, Poly) else Poly()
        for c in reversed(self.coeffs):
            if isinstance(x, Poly):
                acc = acc * x + Poly.const(c)
            else:
                acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.const(c)
        return acc

    def valuation(self) -> int:
        """Order of vanishing at t = 0 (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def shift_down(self, v: int) -> "Poly":
        """Divide by t^v (requires valuation >= v)."""
        if v == 0:
            return self
        return Poly(self.coeffs[v:])

    def to_int_scaled(self) -> tuple[list[int], Fraction]:
        """Return (primitive integer polynomial p, scalar s) with self = s*p."""
        if self.is_zero():
            return [], Q(1)
        denlcm = 1
        for c in self.coeffs:
            denlcm = denlcm * c.denominator // gcd(denlcm, c.denominator)
        ints = [int(c * denlcm) for c in self.coeffs]
        cont = icontent(ints)
        if ints[-1] < 0:
            cont = -cont
        return [c // cont for c in ints], Q(cont, denlcm)

    # -- display -------------------------------------------------------------

    def __repr__(self):
        return f"Poly({poly_str(self)!r})"


def poly_str(p: Poly, var: str = "t") -> str:
    """Expanded textual form, highest degree first, e.g. ``3*t^2 - t + 1``."""
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            tpow = var if i == 1 else f"{var}^{i}"
            body = tpow if mag == 1 else f"{mag}*{tpow}"
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def poly_from_str(s: str, var: str = "t") -> Poly:
    """Inverse of :func:`poly_str` (also accepts rational coefficients)."""
    s = s.strip().replace(" ", "")
    if s in ("", "0"):
        return Poly()
    s = s.replace("-", "+-")
    if s.startswith("+"):
        s = s[1:]
    coeffs: dict[int, Fraction] = {}
    for term in s.split("+"):
        if not term:
            continue
        if var in term:
            head, _, tail = term.partition(var)
            if head in ("", "-"):
                c = Q(head + "1")
            else:
                c = Q(head.rstrip("*"))
            if tail.startswith("^"):
                e = int(tail[1:])
            elif tail == "":
                e = 1
            else:
                raise ValueError(f"malformed term {term!r}")
            coeffs[e] = coeffs.get(e, Q(0)) + c
        else:
            coeffs[0] = coeffs.get(0, Q(0)) + Q(term)
    deg = max(coeffs)
    return Poly(tuple(coeffs.get(i, Q(0)) for i in range(deg + 1)))


P_ZERO = Poly()
P_ONE = Poly((1,))
P_T = Poly((0, 1))


# ---------------------------------------------------------------------------
# RatFun: rational function num/den, den monic, gcd(num, den) = 1
# ---------------------------------------------------------------------------


class RatFun:
    """Element of Q(t) in canonical form (monic denominator, fully reduced)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=P_ONE):
        if not isinstance(num, Poly):
            num = Poly.const(num) if not isinstance(num, (tuple, list)) else Poly(num)
        if not isinstance(den, Poly):
            den = Poly.const(den) if not isinstance(den, (tuple, list)) else Poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            object.__setattr__(self, "num", P_ZERO)
            object.__setattr__(self, "den", P_ONE)
            return
        g = num.gcd(den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.leading()
        if lc != 1:
            num = num.scale(Q(1) / lc)
            den = den.scale(Q(1) / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFun is immutable")

    @staticmethod
    def const(c) -> "RatFun":
        return RatFun(Poly.const(c))

    @staticmethod
    def t_power(k: int) -> "RatFun":
        """t^k for any integer k (negative powers give 1/t^-k)."""
        if k >= 0:
            return RatFun(Poly.monomial(k))
        return RatFun(P_ONE, Poly.monomial(-k))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den == P_ONE

    def as_constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0]

    def __eq__(self, other):
        return (
            isinstance(other, RatFun)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash(("RatFun", self.num.coeffs, self.den.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFun":
        out = object.__new__(RatFun)
        object.__setattr__(out, "num", -self.num)
        object.__setattr__(out, "den", self.den)
        return out

    def __sub__(self, other: "RatFun") -> "RatFun":
        return self + (-other)

    def __mul__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFun") -> "RatFun":
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def inverse(self) -> "RatFun":
        return RF_ONE / self

    def theta(self) -> "RatFun":
        """t*d/dt via the quotient rule."""
        n, d = self.num, self.den
        return RatFun(n.theta() * d - n * d.theta(), d * d)

    def eval(self, x: Fraction) -> Fraction:
        dv = self.den(x)
        if dv == 0:
            raise ZeroDivisionError(f"pole at t = {x}")
        return self.num(x) / dv

    def int_pair(self) -> tuple[list[int], list[int]]:
        """Coprime integer pair (p, q) with self = p/q, q positive-leading."""
        pn, sn = self.num.to_int_scaled()
        pd, sd = self.den.to_int_scaled()
        s = sn / sd
        pn = [c * s.numerator for c in pn]
        pd = [c * s.denominator for c in pd]
        g = gcd(icontent(pn), icontent(pd))
        if pd and pd[-1] < 0:
            g = -g
        pn = [c // g for c in pn]
        pd = [c // g for c in pd]
        return pn, pd

    def __repr__(self):
        if self.den == P_ONE:
            return f"RatFun({poly_str(self.num)!r})"
        return f"RatFun({poly_str(self.num)!r}, {poly_str(self.den)!r})"


RF_ZERO = RatFun(P_ZERO)
RF_ONE = RatFun(P_ONE)
RF_T = RatFun(P_T)


# ---------------------------------------------------------------------------
# cyclotomic polynomials
# ---------------------------------------------------------------------------

_cyclo_cache: dict[int, Poly] = {}
_cyclo_lock = threading.Lock()


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def cyclotomic(n: int) -> Poly:
    """The n-th cyclotomic polynomial, monic with integer coefficients.

    Computed as (T^n - 1) divided by the product of Phi_d over proper
    divisors d of n; results are memoized (guarded for concurrent use).
    """
    if n < 1:
        raise ValueError("cyclotomic index must be a positive integer")
    with _cyclo_lock:
        got = _cyclo_cache.get(n)
    if got is not None:
        return got
    p = Poly((-1,) + (0,) * (n - 1) + (1,))  # T^n - 1
    for d in _divisors(n):
        if d < n:
            p = p.exact_div(cyclotomic(d))
    with _cyclo_lock:
        _cyclo_cache[n] = p
    return p


def euler_phi(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out
