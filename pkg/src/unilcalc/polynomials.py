"""Exact univariate polynomials over Z, F2, Z4 and Q, plus the two quotient
normal forms the switch calculus runs on.

Coefficient rings are tagged by name.  F2 and Z4 coefficients are stored as
canonical residues (0..1, 0..3); Q uses fractions.Fraction.  The textual
canonical form is ``coeff*t^exp`` terms joined by ``+`` with exponents
descending, e.g. ``3*t^2+2*t^1+1*t^0``; the parser additionally accepts the
shorthands ``t``, ``t^k``, bare integers and signed coefficients.

The quotient rings:

* idem_reduce: F2[t] modulo the subgroup {f^2 - f}.  Confluent rewrite
  t^(2k) -> t^k for k >= 1; canonical representatives are supported on
  exponent 0 and the odd exponents.
* versch_reduce: t*Z4[t] modulo the subgroup {2p(t^2) - 2p(t)}.  For an even
  exponent 2k with coefficient 2 or 3, subtract 2(t^(2k) - t^k); canonical
  representatives have even-exponent coefficients in {0, 1}.

even_odd_decompose splits p in F2[t] as p = p_ev^2 + t*p_od^2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

RINGS = ("Z", "F2", "Z4", "Q")

_MOD = {"F2": 2, "Z4": 4}


def _canon(ring, c):
    if ring == "Q":
        return c if isinstance(c, Fraction) else Fraction(c)
    m = _MOD.get(ring)
    return c % m if m else int(c)


@dataclass(frozen=True)
class Polynomial:
    """Immutable dense polynomial; coeffs[k] is the coefficient of t^k."""

    ring: str
    coeffs: tuple

    def __post_init__(self):
        if self.ring not in RINGS:
            raise ValueError(f"unknown ring {self.ring!r}")
        cs = [_canon(self.ring, c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls, ring):
        return cls(ring, ())

    @classmethod
    def one(cls, ring):
        return cls(ring, (1,))

    @classmethod
    def t(cls, ring):
        return cls(ring, (0, 1))

    @classmethod
    def monomial(cls, ring, k, c=1):
        return cls(ring, (0,) * k + (c,))

    @property
    def degree(self):
        """Degree, with -1 as the zero-polynomial sentinel."""
        return len(self.coeffs) - 1

    def coefficient(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _canon(self.ring, 0)

    def is_zero(self):
        return not self.coeffs

    def _check(self, other):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            self.ring,
            tuple(self.coefficient(k) + other.coefficient(k) for k in range(n)),
        )

    def __neg__(self):
        return Polynomial(self.ring, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.ring, tuple(c * other for c in self.coeffs))
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Polynomial.zero(self.ring)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(self.ring, tuple(out))

    __rmul__ = __mul__

    def substitute(self, q):
        """self(q(t)), with q over the same ring."""
        self._check(q)
        acc = Polynomial.zero(self.ring)
        for c in reversed(self.coeffs):
            acc = acc * q + Polynomial(self.ring, (c,))
        return acc

    def times_t(self, k=1):
        if self.is_zero():
            return self
        return Polynomial(self.ring, (0,) * k + self.coeffs)

    def map_ring(self, ring):
        """Reinterpret coefficients in another ring (reduction or lift)."""
        if self.ring == "Q":
            if ring != "Q" and any(c.denominator != 1 for c in self.coeffs):
                raise ValueError("non-integral coefficient")
            return Polynomial(ring, tuple(int(c) for c in self.coeffs))
        return Polynomial(ring, self.coeffs)

    def to_bits(self):
        if self.ring != "F2":
            raise ValueError("to_bits needs an F2 polynomial")
        return sum(1 << k for k, c in enumerate(self.coeffs) if c)

    @classmethod
    def from_bits(cls, bits, ring="F2"):
        return cls(ring, tuple((bits >> k) & 1 for k in range(bits.bit_length())))

    def to_z4pair(self):
        if self.ring != "Z4":
            raise ValueError("to_z4pair needs a Z4 polynomial")
        lo = hi = 0
        for k, c in enumerate(self.coeffs):
            lo |= (c & 1) << k
            hi |= (c >> 1) << k
        return lo, hi

    @classmethod
    def from_z4pair(cls, lo, hi):
        n = max(lo.bit_length(), hi.bit_length())
        return cls("Z4", tuple(((lo >> k) & 1) + 2 * ((hi >> k) & 1) for k in range(n)))

    def __str__(self):
        if self.is_zero():
            return "0"
        out = []
        for k in range(self.degree, -1, -1):
            c = self.coefficient(k)
            if not c:
                continue
            if not out:
                out.append(f"{c}*t^{k}")
            elif c < 0:
                out.append(f"-{-c}*t^{k}")
            else:
                out.append(f"+{c}*t^{k}")
        return "".join(out)

    __repr__ = __str__

    @classmethod
    def parse(cls, text, ring):
        return parse_poly(text, ring)


_TERM_RE = re.compile(
    r"""^(?:
        (?P<ct>[+-]?\d+(?:/\d+)?)\*t(?:\^(?P<e1>-?\d+))?   # c*t or c*t^k
      | (?P<st>[+-]?)t(?:\^(?P<e2>-?\d+))?                 # t, -t, t^k
      | (?P<c>[+-]?\d+(?:/\d+)?)                           # bare coefficient
    )$""",
    re.VERBOSE,
)


def _split_terms(text):
    """Split on top-level +/- while keeping the sign with each term."""
    out = []
    cur = ""
    cur_pos = 0
    for i, ch in enumerate(text):
        if ch in "+-" and cur.strip("+- ") != "" and not cur.rstrip().endswith(("*", "^", "/")):
            out.append((cur, cur_pos))
            cur = ch
            cur_pos = i
        else:
            cur += ch
    out.append((cur, cur_pos))
    return out


def parse_poly(text, ring):
    """Parse the textual polynomial grammar; errors carry the offset."""
    if ring not in RINGS:
        raise ValueError(f"unknown ring {ring!r}")
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial at position 0")
    coeffs = {}
    for raw, pos in _split_terms(s):
        term = raw.replace(" ", "")
        if term in ("+", "-", ""):
            raise ValueError(f"dangling sign at position {pos}")
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"bad term {raw.strip()!r} at position {pos}")
        if m.group("ct") is not None:
            c = Fraction(m.group("ct"))
            e = int(m.group("e1") or 1)
        elif m.group("st") is not None:
            c = Fraction(-1 if m.group("st") == "-" else 1)
            e = int(m.group("e2") or 1)
        else:
            c = Fraction(m.group("c"))
            e = 0
        if e < 0:
            raise ValueError(f"negative exponent at position {pos}")
        if ring != "Q":
            if c.denominator != 1:
                raise ValueError(f"fractional coefficient at position {pos}")
            c = int(c)
        coeffs[e] = coeffs.get(e, 0) + c
    n = max(coeffs) + 1
    return Polynomial(ring, tuple(coeffs.get(k, 0) for k in range(n)))


def compact_str(p):
    """Human rendering: unit coefficients and ^1 exponents are omitted."""
    if p.is_zero():
        return "0"
    out = []
    for k in range(p.degree, -1, -1):
        c = p.coefficient(k)
        if not c:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            tpart = "t" if k == 1 else f"t^{k}"
            body = tpart if abs(c) == 1 else f"{abs(c)}*{tpart}"
        if c < 0:
            out.append(f"-{body}")
        elif out:
            out.append(f"+{body}")
        else:
            out.append(body)
    return "".join(out)


def even_odd_decompose(p):
    """Split p in F2[t] as p = p_ev^2 + t*p_od^2; returns (p_ev, p_od)."""
    if p.ring != "F2":
        raise ValueError("even/odd decomposition works over F2")
    ev = tuple(p.coefficient(2 * k) for k in range((p.degree // 2) + 1))
    od = tuple(p.coefficient(2 * k + 1) for k in range((p.degree + 1) // 2))
    return Polynomial("F2", ev), Polynomial("F2", od)


def _idem_bits(bits):
    d = bits.bit_length() - 1
    for e in range(d, 1, -1):
        if e % 2 == 0 and bits >> e & 1:
            bits ^= (1 << e) | (1 << (e // 2))
    return bits


@dataclass(frozen=True)
class IdemQuotientClass:
    """Class in F2[t]/{f^2-f}; rep is canonical (support in {0} + odds)."""

    rep: Polynomial

    def __add__(self, other):
        return idem_reduce(self.rep + other.rep)

    def is_zero(self):
        return self.rep.is_zero()

    def __str__(self):
        return str(self.rep)

    __repr__ = __str__


def idem_reduce(p):
    if p.ring != "F2":
        raise ValueError("idem_reduce works over F2")
    return IdemQuotientClass(Polynomial.from_bits(_idem_bits(p.to_bits())))


@dataclass(frozen=True)
class VerschQuotientClass:
    """Class in t*Z4[t]/{2p(t^2)-2p(t)}; canonical rep has even-exponent
    coefficients in {0, 1}."""

    rep: Polynomial

    def __add__(self, other):
        return versch_reduce(self.rep + other.rep)

    def __neg__(self):
        return versch_reduce(-self.rep)

    def is_zero(self):
        return self.rep.is_zero()

    def doubled(self):
        return versch_reduce(self.rep * 2)

    def __str__(self):
        return str(self.rep)

    __repr__ = __str__


def versch_reduce(p):
    if p.ring != "Z4":
        raise ValueError("versch_reduce works over Z4")
    if p.coefficient(0):
        raise ValueError("nonzero constant term")
    cs = list(p.coeffs)
    for e in range(len(cs) - 1, 1, -1):
        if e % 2 == 0 and cs[e] >= 2:
            cs[e] -= 2
            cs[e // 2] = (cs[e // 2] + 2) % 4
    return VerschQuotientClass(Polynomial("Z4", tuple(cs)))
