"""(+1)/(-1)-quadratic forms as theta matrices, and their 1-dimensional
resolution complexes.

A form is a square matrix theta over the coefficient ring together with a
sign epsilon.  The bilinear pairing is the derived view lam = theta +
eps*theta^* (involution-transpose), which satisfies lam^* = eps*lam; the
quadratic refinement mu is the diagonal of theta, compared modulo the
indeterminacy {v - eps*vbar}.  Two rings appear: Z[t] with the trivial
involution (entries are Polynomial over "Z") and the dihedral group ring
(entries are DihedralElement).

A resolution is a triple (d, psi0, psi1) of square matrices with
psi1 + psi1^* = -d*psi0, checked on construction.  The induction map
carries Z[t] data into the dihedral ring: form entries and psi entries
pick up a right factor of a, the differential d extends coefficients only.

Chain scripts are plain text, one step per line: ``base_change [[b,0],[0,a]]``,
``switch``, ``assert_equal <matrix literal>`` (forms) or
``assert_equal d=[[..]] psi0=[[..]] psi1=[[..]]`` (resolutions).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from unilcalc.dihedral import (
    TRIVIAL,
    DihedralElement,
    DihedralRing,
    _group_inv,
    parse_dihedral,
    quad_indeterminacy_equal,
)
from unilcalc.polynomials import Polynomial, parse_poly

ZT_RING = "Z[t]"


def _is_dihedral(ring):
    return isinstance(ring, DihedralRing)


def _conj(x):
    return x.bar() if isinstance(x, DihedralElement) else x


def _zero_like(x):
    if isinstance(x, DihedralElement):
        return DihedralElement.zero(x.ring)
    return Polynomial.zero(x.ring)


def _mconj_t(M):
    n = len(M)
    return tuple(tuple(_conj(M[j][i]) for j in range(n)) for i in range(n))


def _madd(Am, Bm):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(Am, Bm))


def _mneg(M):
    return tuple(tuple(-x for x in row) for row in M)


def _msign(M, eps):
    return M if eps == 1 else _mneg(M)


def _mmul(Am, Bm):
    n, inner = len(Am), len(Bm)
    if n == 0 or inner == 0:
        return ()
    m = len(Bm[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = _zero_like(Am[0][0])
            for k in range(inner):
                acc = acc + Am[i][k] * Bm[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _mat_eq(Am, Bm):
    return all(x == y for ra, rb in zip(Am, Bm) for x, y in zip(ra, rb))


def _mu_entry_equal(x, y, eps):
    if isinstance(x, DihedralElement):
        return quad_indeterminacy_equal(x, y, eps)
    diff = x - y
    if eps == 1:
        return diff.is_zero()  # trivial involution: v - vbar = 0
    return all(c % 2 == 0 for c in diff.coeffs)  # v + vbar = 2v


def render_matrix(M):
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in M) + "]"


@dataclass(frozen=True)
class QuadraticFormTheta:
    """eps-quadratic form presented by a theta matrix."""

    ring: object
    theta: tuple
    epsilon: int

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        for row in self.theta:
            if len(row) != len(self.theta):
                raise ValueError("theta must be square")

    @property
    def rank(self):
        return len(self.theta)

    def lam(self):
        return _madd(self.theta, _msign(_mconj_t(self.theta), self.epsilon))

    def mu(self):
        return tuple(self.theta[i][i] for i in range(self.rank))

    def __str__(self):
        return f"theta={render_matrix(self.theta)} eps={self.epsilon:+d}"


@dataclass(frozen=True)
class GeneratorP:
    """The rank-2 generator form over Z[t]: lam = [[0,1],[-1,0]], mu = (p, g)."""

    p: Polynomial
    g: Polynomial

    def __post_init__(self):
        if self.p.ring != "Z" or self.g.ring != "Z":
            raise ValueError("generator parameters must be polynomials over Z")

    def form(self):
        one, zero = Polynomial.one("Z"), Polynomial.zero("Z")
        return QuadraticFormTheta(ZT_RING, ((self.p, one), (zero, self.g)), -1)


@dataclass(frozen=True)
class QuadResolution:
    """Resolution data (d, psi0, psi1); psi1 + psi1^* = -d*psi0 is enforced."""

    ring: object
    d: tuple
    psi0: tuple
    psi1: tuple
    epsilon: int

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        k = len(self.d)
        for M in (self.d, self.psi0, self.psi1):
            if len(M) != k or any(len(row) != k for row in M):
                raise ValueError("d, psi0, psi1 must be square of equal rank")
        lhs = _madd(self.psi1, _mconj_t(self.psi1))
        rhs = _mneg(_mmul(self.d, self.psi0))
        if not _mat_eq(lhs, rhs):
            raise ValueError("resolution identity psi1 + psi1* = -d*psi0 fails")

    @property
    def rank(self):
        return len(self.d)

    def __str__(self):
        return (
            f"d={render_matrix(self.d)} psi0={render_matrix(self.psi0)} "
            f"psi1={render_matrix(self.psi1)} eps={self.epsilon:+d}"
        )


def standard_resolution(p, g):
    """The rank-2 complex over Z[t] with d = 2I, psi0 = [[p,1],[1,2g]],
    psi1 = -psi0; resolves the linking form with parameters (p, g)."""
    if p.ring != "Z" or g.ring != "Z":
        raise ValueError("parameters must be polynomials over Z")
    one, zero, two = Polynomial.one("Z"), Polynomial.zero("Z"), Polynomial.monomial("Z", 0, 2)
    psi0 = ((p, one), (one, g * 2))
    return QuadResolution(ZT_RING, ((two, zero), (zero, two)), psi0, _mneg(psi0), 1)


def _unit_inverse(x):
    if isinstance(x, DihedralElement):
        if len(x.terms) != 1 or x.terms[0][1] not in (1, -1):
            raise ValueError(f"entry {x} is not a group-element unit")
        (k, e), c = x.terms[0]
        return DihedralElement.monomial(*_group_inv(k, e), c=c, ring=x.ring)
    if x.degree > 0 or x.coefficient(0) not in (1, -1):
        raise ValueError(f"entry {x} is not a unit in Z[t]")
    return x


def _monomial_inverse(P):
    n = len(P)
    entries = [(i, j) for i in range(n) for j in range(n) if not P[i][j].is_zero()]
    if len(entries) != n or len({i for i, _ in entries}) != n or len({j for _, j in entries}) != n:
        raise ValueError("no inverse supplied and base-change matrix is not monomial")
    zero = _zero_like(P[entries[0][0]][entries[0][1]])
    inv = [[zero] * n for _ in range(n)]
    for i, j in entries:
        inv[j][i] = _unit_inverse(P[i][j])
    return tuple(tuple(row) for row in inv)


def _identity_like(P):
    zero = _zero_like(P[0][0])
    one = (
        DihedralElement.monomial(0, 0, ring=zero.ring)
        if isinstance(zero, DihedralElement)
        else Polynomial.one(zero.ring)
    )
    n = len(P)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def _checked_inverse(P, P_inv):
    if P_inv is None:
        P_inv = _monomial_inverse(P)
    eye = _identity_like(P)
    if not (_mat_eq(_mmul(P, P_inv), eye) and _mat_eq(_mmul(P_inv, P), eye)):
        raise ValueError("base-change matrix is not invertible")
    return P_inv


def base_change(x, P, P_inv=None):
    """Congruence by P: theta -> P* theta P.  For resolutions the psi
    matrices transform the same way and d -> P* d (P^-1)*.  P must be
    invertible; a monomial matrix of group-element units is inverted
    automatically, anything else needs an explicit P_inv."""
    P = tuple(tuple(row) for row in P)
    P_inv = _checked_inverse(P, P_inv)
    Pc = _mconj_t(P)
    if isinstance(x, QuadraticFormTheta):
        return QuadraticFormTheta(x.ring, _mmul(Pc, _mmul(x.theta, P)), x.epsilon)
    d = _mmul(Pc, _mmul(x.d, _mconj_t(P_inv)))
    psi0 = _mmul(Pc, _mmul(x.psi0, P))
    psi1 = _mmul(Pc, _mmul(x.psi1, P))
    return QuadResolution(x.ring, d, psi0, psi1, x.epsilon)


def switch_form(x):
    """Apply the switch automorphism to every matrix entry."""
    if not _is_dihedral(x.ring):
        raise ValueError("switch acts on dihedral-ring data only")

    def sw(M):
        return tuple(tuple(e.switch() for e in row) for row in M)

    if isinstance(x, QuadraticFormTheta):
        return QuadraticFormTheta(x.ring, sw(x.theta), x.epsilon)
    return QuadResolution(x.ring, sw(x.d), sw(x.psi0), sw(x.psi1), x.epsilon)


def induce_F_form(form):
    """Induct a Z[t] form into the dihedral ring: each theta entry q(t)
    becomes q(t)*a."""
    if form.ring != ZT_RING:
        raise ValueError("induction starts from a Z[t] form")
    theta = tuple(
        tuple(DihedralElement.from_poly(q, a_twist=True) for q in row) for row in form.theta
    )
    return QuadraticFormTheta(TRIVIAL, theta, form.epsilon)


def induce_F_resolution(c):
    """Induct a Z[t] resolution: psi entries pick up the right factor a,
    d extends coefficients without the twist."""
    if c.ring != ZT_RING:
        raise ValueError("induction starts from a Z[t] resolution")

    def carry(M, twist):
        return tuple(
            tuple(DihedralElement.from_poly(q, a_twist=twist) for q in row) for row in M
        )

    return QuadResolution(TRIVIAL, carry(c.d, False), carry(c.psi0, True), carry(c.psi1, True), c.epsilon)


def direct_sum(f1, f2):
    if f1.ring != f2.ring or f1.epsilon != f2.epsilon:
        raise ValueError("direct sum needs matching ring and epsilon")
    n1, n2 = f1.rank, f2.rank
    sample = (f1.theta[0][0] if n1 else (f2.theta[0][0] if n2 else None))
    if sample is None:
        return f1
    zero = _zero_like(sample)
    theta = tuple(
        tuple((f1.theta[i][j] if i < n1 and j < n1 else zero) for j in range(n1 + n2))
        if i < n1
        else tuple((f2.theta[i - n1][j - n1] if j >= n1 else zero) for j in range(n1 + n2))
        for i in range(n1 + n2)
    )
    return QuadraticFormTheta(f1.ring, theta, f1.epsilon)


def _forms_diff(lhs, rhs):
    """None if equal as forms, else a short description of the first
    divergent entry."""
    if lhs.ring != rhs.ring or lhs.epsilon != rhs.epsilon:
        raise ValueError("forms live over different rings or signs")
    if lhs.rank != rhs.rank:
        return f"rank {lhs.rank} vs {rhs.rank}"
    la, lb = lhs.lam(), rhs.lam()
    for i in range(lhs.rank):
        for j in range(lhs.rank):
            if la[i][j] != lb[i][j]:
                return f"lambda entry ({i},{j}): {la[i][j]} vs {lb[i][j]}"
    for i, (x, y) in enumerate(zip(lhs.mu(), rhs.mu())):
        if not _mu_entry_equal(x, y, lhs.epsilon):
            return f"mu entry {i}: {x} vs {y}"
    return None


def forms_equal(lhs, rhs):
    """Equality as forms: lambda matrices identical, mu entries equal
    modulo the quadratic indeterminacy."""
    return _forms_diff(lhs, rhs) is None


def _res_diff(lhs, rhs):
    if lhs.ring != rhs.ring or lhs.epsilon != rhs.epsilon:
        raise ValueError("resolutions live over different rings or signs")
    if lhs.rank != rhs.rank:
        return f"rank {lhs.rank} vs {rhs.rank}"
    for name in ("d", "psi0"):
        A, B = getattr(lhs, name), getattr(rhs, name)
        for i in range(lhs.rank):
            for j in range(lhs.rank):
                if A[i][j] != B[i][j]:
                    return f"{name} entry ({i},{j}): {A[i][j]} vs {B[i][j]}"
    # psi1 off-diagonal is pure indeterminacy; the diagonal is defined mod {v - vbar}
    for i in range(lhs.rank):
        if not _mu_entry_equal(lhs.psi1[i][i], rhs.psi1[i][i], 1):
            return f"psi1 diagonal entry {i}: {lhs.psi1[i][i]} vs {rhs.psi1[i][i]}"
    return None


def resolutions_equal(lhs, rhs):
    return _res_diff(lhs, rhs) is None


# ---------------------------------------------------------------------------
# chain scripts

_MATRIX_RE = re.compile(r"(\w+)=(\[.*?\]\]|\[\])")


def _parse_matrix_literal(text, ring):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"matrix literal must be bracketed: {text!r}")
    inner = text[1:-1].strip()
    if not inner:
        return ()
    if not (inner.startswith("[") and inner.endswith("]")):
        raise ValueError(f"matrix literal needs nested rows: {text!r}")
    rows = []
    depth = 0
    start = None
    for pos, ch in enumerate(inner):
        if ch == "[":
            if depth == 0:
                start = pos + 1
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth == 0:
                rows.append(inner[start:pos])
    if _is_dihedral(ring):
        parse = lambda s: parse_dihedral(s, ring)  # noqa: E731
    else:
        parse = lambda s: parse_poly(s, "Z")  # noqa: E731
    out = []
    for row in rows:
        cells = [c.strip() for c in row.split(",")]
        out.append(tuple(parse(c) for c in cells))
    return tuple(out)


def parse_chain_script(text, ring):
    """Parse a chain script into (op, payload) steps; payloads are parsed
    matrices (base_change) or dicts of matrices (assert_equal)."""
    steps = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "switch":
            steps.append(("switch", None))
        elif line.startswith("base_change"):
            steps.append(("base_change", _parse_matrix_literal(line[len("base_change"):], ring)))
        elif line.startswith("assert_equal"):
            rest = line[len("assert_equal"):].strip()
            named = {m.group(1): m.group(2) for m in _MATRIX_RE.finditer(rest)}
            if named:
                payload = {k: _parse_matrix_literal(v, ring) for k, v in named.items()}
            else:
                payload = {"theta": _parse_matrix_literal(rest, ring)}
            steps.append(("assert_equal", payload))
        else:
            raise ValueError(f"line {ln}: unknown chain step {line!r}")
    return tuple(steps)


@dataclass(frozen=True)
class ChainReport:
    steps: tuple  # (label, rendered state) pairs, in execution order
    ok: bool
    failure: str = None

    def __str__(self):
        lines = [f"{label}: {state}" for label, state in self.steps]
        lines.append("PASS" if self.ok else f"FAIL: {self.failure}")
        return "\n".join(lines)


def _build_target(state, payload):
    if isinstance(state, QuadraticFormTheta):
        if set(payload) != {"theta"}:
            raise ValueError("form target takes a single theta matrix")
        return QuadraticFormTheta(state.ring, payload["theta"], state.epsilon)
    if set(payload) != {"d", "psi0", "psi1"}:
        raise ValueError("resolution target needs d=, psi0=, psi1=")
    return QuadResolution(state.ring, payload["d"], payload["psi0"], payload["psi1"], state.epsilon)


def verify_chain(start, script):
    """Run a chain script against a start form or resolution.  Stops at the
    first failing assert and reports the divergence; otherwise records every
    intermediate state."""
    steps = parse_chain_script(script, start.ring) if isinstance(script, str) else tuple(script)
    state = start
    records = [("start", str(state))]
    for n, (op, payload) in enumerate(steps, start=1):
        try:
            if op == "base_change":
                state = base_change(state, payload)
                records.append((f"step {n} base_change", str(state)))
            elif op == "switch":
                state = switch_form(state)
                records.append((f"step {n} switch", str(state)))
            elif op == "assert_equal":
                target = _build_target(state, payload)
                diff = (
                    _forms_diff(state, target)
                    if isinstance(state, QuadraticFormTheta)
                    else _res_diff(state, target)
                )
                if diff is not None:
                    return ChainReport(tuple(records), False, f"step {n} assert_equal: {diff}")
                records.append((f"step {n} assert_equal", "ok"))
            else:
                raise ValueError(f"unknown chain step {op!r}")
        except ValueError as exc:
            return ChainReport(tuple(records), False, f"step {n} {op}: {exc}")
    return ChainReport(tuple(records), True)


# ---------------------------------------------------------------------------
# the two bundled chains

def _poly_times_b_on_left(p):
    # b*p(t) = sum c_k t^(1-k) a
    return DihedralElement.from_dict({(1 - k, 1): c for k, c in enumerate(p.coeffs) if c})


def _two_a_times_poly(g):
    # 2a*g(t) = sum 2 c_k t^(-k) a
    return DihedralElement.from_dict({(-k, 1): 2 * c for k, c in enumerate(g.coeffs) if c})


def generator_switch_chain(p):
    """Start form and script certifying that the switch of the induced
    rank-2 generator with parameters (tp, 1) equals the induced generator
    with parameters (p, t)."""
    t, one = Polynomial.t("Z"), Polynomial.one("Z")
    start = induce_F_form(GeneratorP(t * p, one).form())
    a, b = DihedralElement.monomial(0, 1), DihedralElement.monomial(1, 1)
    zero = DihedralElement.zero()
    mid = ((_poly_times_b_on_left(p), b), (zero, a))
    target = induce_F_form(GeneratorP(p, t).form())
    script = "\n".join(
        [
            "base_change [[b, 0], [0, a]]",
            f"assert_equal {render_matrix(mid)}",
            "switch",
            f"assert_equal {render_matrix(target.theta)}",
        ]
    )
    return start, script


def resolution_switch_chain(p, g):
    """Start resolution and script certifying that the switch of the
    induced complex for (tp, g) equals the induced complex for (p, tg)."""
    t = Polynomial.t("Z")
    start = induce_F_resolution(standard_resolution(t * p, g))
    a, b = DihedralElement.monomial(0, 1), DihedralElement.monomial(1, 1)
    mid_psi0 = ((_poly_times_b_on_left(p), b), (b, _two_a_times_poly(g)))
    mid_d = render_matrix(start.d)
    target = induce_F_resolution(standard_resolution(p, t * g))
    script = "\n".join(
        [
            "base_change [[b, 0], [0, a]]",
            f"assert_equal d={mid_d} psi0={render_matrix(mid_psi0)} psi1={render_matrix(_mneg(mid_psi0))}",
            "switch",
            (
                f"assert_equal d={render_matrix(target.d)} "
                f"psi0={render_matrix(target.psi0)} psi1={render_matrix(target.psi1)}"
            ),
        ]
    )
    return start, script
