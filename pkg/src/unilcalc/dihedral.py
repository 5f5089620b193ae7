"""The group ring Z[D_inf] for D_inf = <a, b | a^2 = b^2 = 1>, with t = ba.

Group elements are written t^k a^eps and stored as (k, eps) pairs, so
multiplication is (t^j a^delta)(t^k a^eps) = t^(j + (-1)^delta k) a^(delta
xor eps).  A ring may carry a sign character w with w(a), w(b) in {+1, -1};
the involution sends g to w(g) g^(-1) and extends additively.  The switch
automorphism swaps a and b, i.e. t^k -> t^-k and t^k a -> t^(1-k) a.

Textual form: integer-coefficient sums of ``c*t^k`` and ``c*t^k*a`` (the
parser also accepts ``a``, ``b``, ``t``, bare integers).
"""

from __future__ import annotations

from dataclasses import dataclass

from unilcalc.polynomials import _split_terms


@dataclass(frozen=True)
class DihedralRing:
    """Sign character of the involution; (1, 1) is the untwisted ring."""

    w_a: int = 1
    w_b: int = 1

    def __post_init__(self):
        if self.w_a not in (1, -1) or self.w_b not in (1, -1):
            raise ValueError("sign character values must be +1 or -1")

    def weight(self, k, eps):
        w = (self.w_a * self.w_b) ** (k & 1)
        return w * self.w_a if eps else w


TRIVIAL = DihedralRing(1, 1)


def _group_mul(j, delta, k, eps):
    return j + (k if delta == 0 else -k), delta ^ eps


def _group_inv(k, eps):
    return (k, 1) if eps else (-k, 0)


@dataclass(frozen=True)
class DihedralElement:
    """Finite Z-linear combination of group elements; terms is a sorted
    tuple of ((k, eps), coeff) with nonzero coeffs."""

    terms: tuple
    ring: DihedralRing = TRIVIAL

    @classmethod
    def from_dict(cls, d, ring=TRIVIAL):
        items = tuple(
            sorted(((g, c) for g, c in d.items() if c), key=lambda it: (it[0][1], it[0][0]))
        )
        return cls(items, ring)

    @classmethod
    def zero(cls, ring=TRIVIAL):
        return cls((), ring)

    @classmethod
    def monomial(cls, k, eps, c=1, ring=TRIVIAL):
        return cls.from_dict({(k, eps): c}, ring)

    @classmethod
    def from_poly(cls, p, a_twist=False, ring=TRIVIAL):
        """p(t) as an element, optionally right-multiplied by a."""
        if p.ring != "Z":
            p = p.map_ring("Z")
        eps = 1 if a_twist else 0
        return cls.from_dict(
            {(k, eps): c for k, c in enumerate(p.coeffs) if c}, ring
        )

    def _d(self):
        return dict(self.terms)

    def _check(self, other):
        if not isinstance(other, DihedralElement):
            raise TypeError(f"expected DihedralElement, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError("sign character mismatch")

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._check(other)
        d = self._d()
        for g, c in other.terms:
            d[g] = d.get(g, 0) + c
        return DihedralElement.from_dict(d, self.ring)

    def __neg__(self):
        return DihedralElement(tuple((g, -c) for g, c in self.terms), self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return DihedralElement.from_dict(
                {g: c * other for g, c in self.terms}, self.ring
            )
        self._check(other)
        d = {}
        for (j, delta), c1 in self.terms:
            for (k, eps), c2 in other.terms:
                g = _group_mul(j, delta, k, eps)
                d[g] = d.get(g, 0) + c1 * c2
        return DihedralElement.from_dict(d, self.ring)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def bar(self):
        """The involution g -> w(g) g^(-1)."""
        d = {}
        for (k, eps), c in self.terms:
            g = _group_inv(k, eps)
            d[g] = d.get(g, 0) + c * self.ring.weight(k, eps)
        return DihedralElement.from_dict(d, self.ring)

    def switch(self):
        """The automorphism exchanging a and b."""
        d = {}
        for (k, eps), c in self.terms:
            g = (1 - k, 1) if eps else (-k, 0)
            d[g] = d.get(g, 0) + c
        return DihedralElement.from_dict(d, self.ring)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for (k, eps), c in self.terms:
            body = f"t^{k}*a" if eps else f"t^{k}"
            if not out:
                out.append(f"{c}*{body}")
            elif c < 0:
                out.append(f"-{-c}*{body}")
            else:
                out.append(f"+{c}*{body}")
        return "".join(out)

    __repr__ = __str__


def parse_dihedral(text, ring=TRIVIAL):
    s = text.strip()
    if not s:
        raise ValueError("empty element at position 0")
    d = {}
    for raw, pos in _split_terms(s):
        term = raw.replace(" ", "")
        if term in ("+", "-", ""):
            raise ValueError(f"dangling sign at position {pos}")
        sign = 1
        if term[0] in "+-":
            sign = -1 if term[0] == "-" else 1
            term = term[1:]
        parts = term.split("*")
        coeff = sign
        if parts and parts[0].isdigit():
            coeff = sign * int(parts.pop(0))
        k, eps = 0, 0
        if parts and (parts[0] == "t" or parts[0].startswith("t^")):
            tok = parts.pop(0)
            try:
                k = 1 if tok == "t" else int(tok[2:])
            except ValueError:
                raise ValueError(f"bad power {tok!r} at position {pos}") from None
        if parts and parts[0] in ("a", "b"):
            if parts.pop(0) == "a":
                eps = 1
            else:
                k, eps = k + 1, 1  # b = t*a
        if parts:
            raise ValueError(f"bad term {raw.strip()!r} at position {pos}")
        g = (k, eps)
        d[g] = d.get(g, 0) + coeff
    return DihedralElement.from_dict(d, ring)


A = DihedralElement.monomial(0, 1)
B = DihedralElement.monomial(1, 1)
T = DihedralElement.monomial(1, 0)
ONE = DihedralElement.monomial(0, 0)


def quad_indeterminacy_equal(x, y, eps):
    """Whether x - y lies in the subgroup generated by {v - eps*bar(v)}.

    The generators split along involution orbits of group elements, so
    membership reduces to one rank-1 lattice condition per orbit.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    x._check(y)
    d = (x - y)._d()
    ring = x.ring
    seen = set()
    for g in list(d):
        if g in seen:
            continue
        k, e = g
        gi = _group_inv(k, e)
        s = ring.weight(k, e)
        if gi == g:
            seen.add(g)
            c = d.get(g, 0)
            if eps * s == 1:
                if c != 0:
                    return False
            elif c % 2:
                return False
        else:
            seen.update((g, gi))
            if d.get(gi, 0) != -eps * s * d.get(g, 0):
                return False
    return True
