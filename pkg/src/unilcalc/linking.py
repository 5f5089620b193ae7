"""Quadratic linking forms of exponent 2 over F2[t], with values carried as
numerators over a denominator of 2.

A form of rank k stores b_num, a symmetric k x k matrix over F2[t] (the
numerator of b(e_i, e_j), read in (1/2)Z[t]/Z[t]) and q_num, a length-k
vector over Z4[t] (the numerator of q(e_i), read in (1/2)Z[t]/2Z[t]).
Polynomials over F2 are int bitmasks, Z4[t] values are (lo, hi) bit pairs;
see kernels.  Nonsingularity (det b_num = 1), symmetry and the mod-2
compatibility q_num(e_i) = b_num(i, i) are enforced on construction.

The quadratic law q(x + y) = q(x) + q(y) + 2b(x, y), q(f*x) = f^2*q(x)
determines q everywhere from basis values; eval_bq implements it with
{0,1}-coefficient lifts, and the result is lift-independent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from unilcalc.f2linalg import (
    det,
    hnf,
    in_row_span,
    left_kernel,
    mat_identity,
    mat_inverse,
    mat_mul,
    mat_transpose,
    reduce_mod_rows,
    smith,
    vec_mat_mul,
)
from unilcalc.funcfield import F2Rational, artin_schreier_reduce
from unilcalc.kernels import gf2_deg, gf2_divmod, gf2_mul, z4_add, z4_mul, z4_neg, z4_sq_lift
from unilcalc.polynomials import Polynomial, even_odd_decompose, parse_poly

Z4_ZERO = (0, 0)


@dataclass(frozen=True)
class LinkingForm:
    rank: int
    b_num: tuple
    q_num: tuple

    def __post_init__(self):
        k = self.rank
        if len(self.b_num) != k or any(len(row) != k for row in self.b_num):
            raise ValueError("b_num must be rank x rank")
        if len(self.q_num) != k:
            raise ValueError("q_num must have one entry per basis vector")
        for i in range(k):
            for j in range(k):
                if self.b_num[i][j] != self.b_num[j][i]:
                    raise ValueError("b_num must be symmetric")
        if det(self.b_num) != 1:
            raise ValueError("b is singular: det(b_num) is not a unit in F2[t]")
        for i, (lo, _) in enumerate(self.q_num):
            if lo != self.b_num[i][i]:
                raise ValueError(f"q_num[{i}] mod 2 must equal b_num[{i}][{i}]")

    def to_json_dict(self):
        return {
            "rank": self.rank,
            "b_num": [[str(Polynomial.from_bits(x)) for x in row] for row in self.b_num],
            "q_num": [str(Polynomial.from_z4pair(lo, hi)) for lo, hi in self.q_num],
        }

    @classmethod
    def from_json_dict(cls, d):
        b = tuple(
            tuple(parse_poly(s, "F2").to_bits() for s in row) for row in d["b_num"]
        )
        q = tuple(parse_poly(s, "Z4").to_z4pair() for s in d["q_num"])
        return cls(d["rank"], b, q)


@dataclass(frozen=True)
class Submodule:
    """Submodule of F2[t]^k held by its canonical Hermite basis."""

    ambient_rank: int
    basis: tuple

    @classmethod
    def from_generators(cls, gens, ambient_rank):
        gens = tuple(tuple(row) for row in gens)
        for row in gens:
            if len(row) != ambient_rank:
                raise ValueError("generator length does not match ambient rank")
        if not gens:
            return cls(ambient_rank, ())
        H, _ = hnf(gens)
        return cls(ambient_rank, tuple(row for row in H if any(row)))

    @property
    def rank(self):
        return len(self.basis)

    def member(self, v):
        if len(v) != self.ambient_rank:
            raise ValueError("vector length does not match ambient rank")
        return in_row_span(tuple(v), self.basis) if self.basis else not any(v)

    def contains(self, other):
        return all(self.member(row) for row in other.basis)

    def to_json_dict(self):
        return {"generators": [[str(Polynomial.from_bits(x)) for x in row] for row in self.basis]}

    @classmethod
    def from_json_dict(cls, d, ambient_rank):
        gens = [
            [parse_poly(s, "F2").to_bits() for s in row] for row in d["generators"]
        ]
        return cls.from_generators(gens, ambient_rank)


def full_module(k):
    return Submodule(k, mat_identity(k))


def make_N(p, g):
    """Rank-2 generator: b_num = [[p, 1], [1, 0]] mod 2, q_num = (p, 2g)
    mod 4.  Requires p(0) = 0 or g(0) = 0."""
    if p.ring != "Z" or g.ring != "Z":
        raise ValueError("parameters must be polynomials over Z")
    if p.coefficient(0) != 0 and g.coefficient(0) != 0:
        raise ValueError("need p(0) = 0 or g(0) = 0")
    b = ((p.map_ring("F2").to_bits(), 1), (1, 0))
    q = (p.map_ring("Z4").to_z4pair(), (g * 2).map_ring("Z4").to_z4pair())
    return LinkingForm(2, b, q)


def eval_bq(form, x, y):
    """(b(x, y) numerator over F2[t], q(x) numerator over Z4[t])."""
    k = form.rank
    if len(x) != k or len(y) != k:
        raise ValueError("vector length does not match form rank")
    b_val = 0
    for i in range(k):
        if x[i]:
            for j in range(k):
                if y[j] and form.b_num[i][j]:
                    b_val ^= gf2_mul(gf2_mul(x[i], form.b_num[i][j]), y[j])
    q_val = Z4_ZERO
    for i in range(k):
        if x[i]:
            q_val = z4_add(*q_val, *z4_mul(*z4_sq_lift(x[i]), *form.q_num[i]))
    for i in range(k):
        for j in range(i + 1, k):
            if x[i] and x[j] and form.b_num[i][j]:
                cross = gf2_mul(gf2_mul(x[i], x[j]), form.b_num[i][j])
                q_val = z4_add(*q_val, 0, cross)  # 2 * lift of the cross term
    return b_val, q_val


def direct_sum(forms):
    forms = tuple(forms)
    k = sum(f.rank for f in forms)
    b = [[0] * k for _ in range(k)]
    q = []
    off = 0
    for f in forms:
        for i in range(f.rank):
            for j in range(f.rank):
                b[off + i][off + j] = f.b_num[i][j]
        q.extend(f.q_num)
        off += f.rank
    return LinkingForm(k, tuple(tuple(row) for row in b), tuple(q))


def negate(form):
    return LinkingForm(form.rank, form.b_num, tuple(z4_neg(*c) for c in form.q_num))


def resolution_to_linking(c):
    """Linking form of a Z[t] resolution with d = 2*identity: b_num = psi0
    mod 2, q_num(e_i) = -psi1(i, i) mod 4.  The sign makes the standard
    (p, g) complex land on make_N(p, g)."""
    if c.ring != "Z[t]":
        raise ValueError("resolution must live over Z[t]")
    k = c.rank
    two_eye = tuple(
        tuple(Polynomial.monomial("Z", 0, 2) if i == j else Polynomial.zero("Z") for j in range(k))
        for i in range(k)
    )
    if c.d != two_eye:
        raise ValueError("only d = 2*identity resolutions are supported")
    b = tuple(tuple(e.map_ring("F2").to_bits() for e in row) for row in c.psi0)
    q = tuple((-c.psi1[i][i]).map_ring("Z4").to_z4pair() for i in range(k))
    return LinkingForm(k, b, q)


def is_even(form):
    """True when b(x, x) is integral for all x; on the numerator encoding
    this is b_num(i, i) = 0 for all i (cross terms of b(x, x) cancel mod 2)."""
    return all(form.b_num[i][i] == 0 for i in range(form.rank))


def orthogonal_complement(form, S):
    """{x : b(x, s) = 0 for all s in S} in canonical basis."""
    if S.ambient_rank != form.rank:
        raise ValueError("submodule ambient rank does not match form")
    if not S.basis:
        return full_module(form.rank)
    M = mat_mul(form.b_num, mat_transpose(S.basis))
    return Submodule(form.rank, left_kernel(M))


def _check_sublagrangian(form, S):
    for i, row in enumerate(S.basis):
        _, qv = eval_bq(form, row, row)
        if qv != Z4_ZERO:
            raise ValueError(f"q does not vanish on generator {i} of S")
    for i, ri in enumerate(S.basis):
        for j in range(i, len(S.basis)):
            bv, _ = eval_bq(form, ri, S.basis[j])
            if bv:
                raise ValueError(f"b({i},{j}) is nonzero on S: S is not isotropic")


def sublagrangian_reduce(form, S):
    """The induced form on (S-perp)/S.  S must be isotropic with q|S = 0 and
    a direct summand of its complement; the quotient basis comes from a
    Smith decomposition of S inside S-perp."""
    _check_sublagrangian(form, S)
    comp = orthogonal_complement(form, S)
    if not comp.contains(S):
        raise ValueError("S is not contained in its orthogonal complement")
    T = comp.basis
    if not S.basis:
        reps = T
    else:
        C = tuple(_coords_in_hnf(row, T) for row in S.basis)
        D, _, V = smith(C)
        r = len(S.basis)
        if any(D[i][i] != 1 for i in range(r)):
            raise ValueError("S is not a direct summand of its orthogonal complement")
        V_inv = mat_inverse(V)
        reps = mat_mul(V_inv[r:], T)
    k2 = len(reps)
    b = tuple(
        tuple(eval_bq(form, reps[i], reps[j])[0] for j in range(k2)) for i in range(k2)
    )
    q = tuple(eval_bq(form, reps[i], reps[i])[1] for i in range(k2))
    return LinkingForm(k2, b, q)


def _coords_in_hnf(v, H):
    """Coefficients expressing v over the Hermite basis H; v must lie in
    the span."""
    coeffs = []
    rem = list(v)
    for row in H:
        j = next(c for c, x in enumerate(row) if x)
        qpart, _ = gf2_divmod(rem[j], row[j])
        coeffs.append(qpart)
        if qpart:
            rem = [x ^ gf2_mul(qpart, y) for x, y in zip(rem, row)]
    if any(rem):
        raise ValueError("vector is not in the span")
    return tuple(coeffs)


def _k_bilinear(b_num, u, v):
    acc = F2Rational(0)
    for i, ui in enumerate(u):
        if ui.is_zero():
            continue
        for j, vj in enumerate(v):
            if not vj.is_zero() and b_num[i][j]:
                acc = acc + ui * vj * F2Rational(b_num[i][j])
    return acc


def _k_quadratic(b_num, q2, x):
    acc = F2Rational(0)
    for i, xi in enumerate(x):
        if not xi.is_zero() and q2[i]:
            acc = acc + xi * xi * F2Rational(q2[i])
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            if not x[i].is_zero() and not x[j].is_zero() and b_num[i][j]:
                acc = acc + x[i] * x[j] * F2Rational(b_num[i][j])
    return acc


def arf_even(form, rng=None):
    """Arf invariant of an even form, valued in F2(t)/{g^2 - g}.

    2b is a nonsingular alternating pairing over the field F2(t) and q/2 its
    quadratic refinement; a symplectic basis (u_i, v_i) is extracted by
    Gaussian steps and the class of sum q(u_i) q(v_i) is returned.  The
    optional rng only shuffles pivot choices; the class is basis-independent.
    """
    if not is_even(form):
        raise ValueError("Arf invariant needs an even form")
    k = form.rank
    assert k % 2 == 0, "nonsingular alternating forms have even rank"
    q2 = tuple(hi for _, hi in form.q_num)
    basis = [
        tuple(F2Rational(1 if i == j else 0) for j in range(k)) for i in range(k)
    ]
    total = F2Rational(0)
    while basis:
        order = list(range(len(basis)))
        if rng is not None:
            rng.shuffle(order)
        pick = None
        for ui in order:
            partners = [vi for vi in order if vi != ui and not _k_bilinear(form.b_num, basis[ui], basis[vi]).is_zero()]
            if partners:
                pick = (ui, partners[0] if rng is None else rng.choice(partners))
                break
        if pick is None:
            raise ValueError("pairing is singular on the remaining space")
        ui, vi = pick
        u = basis[ui]
        scale = _k_bilinear(form.b_num, u, basis[vi]).inverse()
        v = tuple(scale * x for x in basis[vi])
        total = total + _k_quadratic(form.b_num, q2, u) * _k_quadratic(form.b_num, q2, v)
        rest = []
        for wi in range(len(basis)):
            if wi in (ui, vi):
                continue
            w = basis[wi]
            cu = _k_bilinear(form.b_num, w, v)
            cv = _k_bilinear(form.b_num, w, u)
            w2 = tuple(x + cu * a + cv * b for x, a, b in zip(w, u, v))
            rest.append(w2)
        basis = rest
    return artin_schreier_reduce(total)


def _lagrangian_candidates(form, pivots, bound):
    """Canonical-echelon candidate generators for one pivot pattern, with
    rows pre-filtered by q(row) = 0."""
    k = form.rank
    r = len(pivots)
    pivot_space = range(1, 1 << (bound + 1))
    free_space = range(1 << (bound + 1))
    for pvals in itertools.product(pivot_space, repeat=r):
        deg_of = {pivots[i]: gf2_deg(pvals[i]) for i in range(r)}
        per_row = []
        for i in range(r):
            slots = []
            for c in range(k):
                if c < pivots[i]:
                    slots.append((c, None))  # echelon zero
                elif c == pivots[i]:
                    slots.append((c, (pvals[i],)))
                elif c in deg_of:
                    slots.append((c, range(1 << deg_of[c])))  # reduced mod later pivot
                else:
                    slots.append((c, free_space))
            var = [(c, opts) for c, opts in slots if opts is not None]
            rows = []
            for vals in itertools.product(*(opts for _, opts in var)):
                row = [0] * k
                for (c, _), val in zip(var, vals):
                    row[c] = val
                row = tuple(row)
                if eval_bq(form, row, row)[1] == Z4_ZERO:
                    rows.append(row)
            if not rows:
                per_row = None
                break
            per_row.append(rows)
        if per_row is None:
            continue
        for combo in itertools.product(*per_row):
            yield combo


def _search_pattern(args):
    form, pivots, bound = args
    for combo in _lagrangian_candidates(form, pivots, bound):
        ok = True
        for i in range(len(combo)):
            for j in range(i + 1, len(combo)):
                if eval_bq(form, combo[i], combo[j])[0]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        # candidates are already canonical echelon bases
        L = Submodule(form.rank, combo)
        if orthogonal_complement(form, L).basis == L.basis:
            return L
    return None


def find_lagrangian(form, degree_bound, jobs=1):
    """Exhaustive search for L with L = L-perp and q|L = 0, over canonical
    echelon generator matrices with entries of degree <= degree_bound.
    Returns the first witness in canonical order, or None (no witness below
    the bound is not a nonexistence proof)."""
    k = form.rank
    if k == 0:
        return Submodule(0, ())
    if k % 2:
        return None
    r = k // 2
    patterns = list(itertools.combinations(range(k), r))
    tasks = [(form, piv, degree_bound) for piv in patterns]
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            results = pool.map(_search_pattern, tasks)
        return next((res for res in results if res is not None), None)
    for task in tasks:
        res = _search_pattern(task)
        if res is not None:
            return res
    return None


def witt_four_term_instance(p):
    """The rank-8 sum (N_{t,p} + N_{p,t}) + (-(N_{1,tp} + N_{tp,1}))
    together with its standard sublagrangian span(v0, v1), where
    v0 = p_ev e4 + e6 + t p_od e8 and v1 = e2 + p_od e4 + p_ev e8 use the
    even/odd split of p mod 2.  Reducing at this sublagrangian certifies
    [N_{t,p}] + [N_{p,t}] = [N_{1,tp}] + [N_{tp,1}]."""
    if p.ring != "Z":
        raise ValueError("p must be a polynomial over Z")
    t = Polynomial.t("Z")
    one = Polynomial.one("Z")
    G = direct_sum(
        [
            make_N(t, p),
            make_N(p, t),
            negate(make_N(one, t * p)),
            negate(make_N(t * p, one)),
        ]
    )
    ev, od = even_odd_decompose(p.map_ring("F2"))
    pe, po = ev.to_bits(), od.to_bits()
    v0 = (0, 0, 0, pe, 0, 1, 0, gf2_mul(2, po))  # t*p_od
    v1 = (0, 1, 0, po, 0, 0, 0, pe)
    return G, Submodule.from_generators((v0, v1), 8)
