"""The rational function field F2(t) and its Artin-Schreier quotient
F2(t)/{g^2 - g}.

Polynomials are bit-packed ints (see kernels).  A class in the quotient is
held in partial-fraction normal form: a polynomial part supported on
exponent 0 and the odd exponents, plus, for each monic irreducible pole,
numerators at odd pole orders only.  Both constraints come from the same
rewrite: squares are rewritten one level down, and squaring is a bijection
on each residue field, so every even level empties.
"""

from __future__ import annotations

from dataclasses import dataclass

from unilcalc.kernels import gf2_deg, gf2_divmod, gf2_gcd, gf2_mod, gf2_mul
from unilcalc.polynomials import Polynomial, idem_reduce


def gf2_gcdext(a, b):
    """(g, u, v) with u*a + v*b = g = gcd(a, b)."""
    u0, v0, u1, v1 = 1, 0, 0, 1
    while b:
        q, r = gf2_divmod(a, b)
        a, b = b, r
        u0, u1 = u1, u0 ^ gf2_mul(q, u1)
        v0, v1 = v1, v0 ^ gf2_mul(q, v1)
    return a, u0, v0


def gf2_pow(a, n):
    r = 1
    while n:
        if n & 1:
            r = gf2_mul(r, a)
        a = gf2_mul(a, a)
        n >>= 1
    return r


def gf2_powmod(a, n, m):
    r = 1
    a = gf2_mod(a, m)
    while n:
        if n & 1:
            r = gf2_mod(gf2_mul(r, a), m)
        a = gf2_mod(gf2_mul(a, a), m)
        n >>= 1
    return r


def is_irreducible(f):
    d = gf2_deg(f)
    if d <= 0:
        return False
    if d == 1:
        return True
    # t^(2^d) == t mod f, and no factor of degree <= d/2
    b = 2  # the polynomial t
    for _ in range(d // 2):
        b = gf2_mod(gf2_mul(b, b), f)
        if gf2_gcd(b ^ 2, f) != 1:
            return False
    for _ in range(d - d // 2):
        b = gf2_mod(gf2_mul(b, b), f)
    return b == 2


def factor(f):
    """Monic irreducible factorization, as a sorted tuple of (pi, mult)."""
    if f == 0:
        raise ValueError("cannot factor 0")
    out = []
    c = 2
    while gf2_deg(f) >= 1:
        if gf2_deg(c) > gf2_deg(f) // 2:
            out.append((f, 1))
            break
        q, r = gf2_divmod(f, c)
        if r == 0:
            m = 0
            while r == 0:
                f, m = q, m + 1
                q, r = gf2_divmod(f, c)
            out.append((c, m))
        c += 1
    return tuple(sorted(out))


def sqrt_mod(a, pi):
    """The unique square root of a in F2[t]/pi (pi irreducible)."""
    r = gf2_mod(a, pi)
    for _ in range(gf2_deg(pi) - 1):
        r = gf2_mod(gf2_mul(r, r), pi)
    return r


@dataclass(frozen=True)
class F2Rational:
    """num/den over F2[t], normalized so gcd(num, den) = 1."""

    num: int
    den: int = 1

    def __post_init__(self):
        if self.den == 0:
            raise ZeroDivisionError("zero denominator")
        g = gf2_gcd(self.num, self.den)
        if g > 1:
            object.__setattr__(self, "num", gf2_divmod(self.num, g)[0])
            object.__setattr__(self, "den", gf2_divmod(self.den, g)[0])

    def __add__(self, other):
        return F2Rational(
            gf2_mul(self.num, other.den) ^ gf2_mul(other.num, self.den),
            gf2_mul(self.den, other.den),
        )

    __sub__ = __add__

    def __mul__(self, other):
        return F2Rational(gf2_mul(self.num, other.num), gf2_mul(self.den, other.den))

    def inverse(self):
        if self.num == 0:
            raise ZeroDivisionError("inverse of zero")
        return F2Rational(self.den, self.num)

    def is_zero(self):
        return self.num == 0

    def __str__(self):
        n = str(Polynomial.from_bits(self.num))
        if self.den == 1:
            return n
        return f"({n})/({Polynomial.from_bits(self.den)})"


def partial_fractions(num, den):
    """num/den as (poly_part_bits, {pi: {level: numerator}}).

    Numerators at level j satisfy deg < deg pi; levels run 1..multiplicity.
    """
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    g = gf2_gcd(num, den)
    if g > 1:
        num, den = gf2_divmod(num, g)[0], gf2_divmod(den, g)[0]
    poly, r = gf2_divmod(num, den)
    poles = {}
    pieces = [(r, factor(den))]
    while pieces:
        r, fs = pieces.pop()
        if r == 0 or not fs:
            continue
        pi, e = fs[0]
        pie = gf2_pow(pi, e)
        if len(fs) == 1:
            q, rr = gf2_divmod(r, pie)
            poly ^= q
            levels = poles.setdefault(pi, {})
            for j in range(e, 0, -1):  # pi-adic digits of rr, lowest first
                rr, d = gf2_divmod(rr, pi)
                if d:
                    levels[j] = levels.get(j, 0) ^ d
            continue
        rest = 1
        for p2, e2 in fs[1:]:
            rest = gf2_mul(rest, gf2_pow(p2, e2))
        g1, u, v = gf2_gcdext(pie, rest)
        assert g1 == 1
        # r/(pie*rest) = r*v/pie + r*u/rest
        pieces.append((gf2_mul(r, v), (fs[0],)))
        pieces.append((gf2_mul(r, u), fs[1:]))
    return poly, {pi: lv for pi, lv in poles.items() if any(lv.values())}


@dataclass(frozen=True)
class RationalFunctionClass:
    """Canonical representative in F2(t)/{g^2 - g}.

    poly_rep: F2 polynomial supported on exponent 0 and odd exponents.
    pole_parts: tuple of (pi_bits, ((odd_level, numerator_bits), ...)),
    sorted, numerators reduced mod pi.
    """

    poly_rep: Polynomial
    pole_parts: tuple = ()

    def is_zero(self):
        return self.poly_rep.is_zero() and not self.pole_parts

    def __add__(self, other):
        acc = {pi: dict(lv) for pi, lv in self.pole_parts}
        for pi, lv in other.pole_parts:
            dst = acc.setdefault(pi, {})
            for j, a in lv:
                dst[j] = dst.get(j, 0) ^ a
        parts = _pack_poles(acc)
        return RationalFunctionClass(
            idem_reduce(self.poly_rep + other.poly_rep).rep, parts
        )

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        if not self.poly_rep.is_zero():
            terms.append(str(self.poly_rep))
        for pi, lv in self.pole_parts:
            for j, a in lv:
                terms.append(
                    f"({Polynomial.from_bits(a)})/({Polynomial.from_bits(pi)})^{j}"
                )
        return " + ".join(terms)

    __repr__ = __str__


def _pack_poles(acc):
    out = []
    for pi in sorted(acc):
        lv = {j: a for j, a in acc[pi].items() if a}
        if lv:
            out.append((pi, tuple(sorted(lv.items()))))
    return tuple(out)


def artin_schreier_reduce(num, den=None):
    """Canonical class of num/den (F2 polynomials or bit-packed ints)."""
    if isinstance(num, F2Rational):
        num, den = num.num, num.den
    if isinstance(num, Polynomial):
        num = num.to_bits()
    if isinstance(den, Polynomial):
        den = den.to_bits()
    if den is None:
        den = 1
    poly, poles = partial_fractions(num, den)
    out = {}
    for pi, levels in poles.items():
        levels = dict(levels)
        for m in range(max(levels), 1, -1):
            a = levels.get(m, 0)
            if m % 2 or not a:
                continue
            # single rewrite empties level m: with c = sqrt(a) mod pi and
            # c^2 = w*pi + a, the relation (c/pi^(m/2))^2 - c/pi^(m/2)
            # replaces a/pi^m by w/pi^(m-1) + c/pi^(m/2)
            c = sqrt_mod(a, pi)
            w, r = gf2_divmod(gf2_mul(c, c), pi)
            assert r == a
            levels[m] = 0
            levels[m - 1] = levels.get(m - 1, 0) ^ w
            levels[m // 2] = levels.get(m // 2, 0) ^ c
        out[pi] = levels
    return RationalFunctionClass(
        idem_reduce(Polynomial.from_bits(poly)).rep, _pack_poles(out)
    )
