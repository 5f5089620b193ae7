"""Counting homeomorphism classes of manifolds homotopy equivalent to
P^n and P^n # P^n, in explicit coordinates with desk-scale truncations.

The structure set of P^n is a sum of Z_2's plus one Z when n = 3 mod 4;
classes of P^n # P^n are unordered pairs of such coordinates crossed
with switch-orbits of the relevant UNil group.  Degree cutoffs and a
bound on the Z coordinate make every table finite.
"""

import csv
import io
from dataclasses import dataclass, replace
from itertools import combinations_with_replacement, product

from unilcalc.polynomials import compact_str
from unilcalc.unil import compact_literal, enumerate_truncated


@dataclass(frozen=True)
class StructureSetDescriptor:
    n: int
    m: int
    ell: int
    z2_count: int
    has_Z: bool

    def count(self, z_bound=0):
        base = 1 << self.z2_count
        if self.has_Z:
            return base * (2 * z_bound + 1)
        return base


def structure_set_P(n):
    """Descriptor of S(P^n): n = 4m + ell with 0 < ell <= 4."""
    if n <= 3:
        raise ValueError("dimension must exceed 3")
    m, ell = divmod(n - 1, 4)
    ell += 1
    desc = StructureSetDescriptor(n, m, ell, 2 * m + ell // 4, ell == 3)
    assert desc.z2_count >= 1
    assert desc.has_Z == (n % 4 == 3)
    return desc


def structure_set_elements(desc, z_bound=0):
    """Truncated coordinate tuples in lexicographic order.

    A coordinate is a tuple of z2_count bits, with the Z value appended
    as a final entry when present (|z| <= z_bound).
    """
    out = []
    for bits in product((0, 1), repeat=desc.z2_count):
        if desc.has_Z:
            for z in range(-z_bound, z_bound + 1):
                out.append(bits + (z,))
        else:
            out.append(bits)
    out.sort()
    return tuple(out)


def coord_str(desc, coord):
    bits = "".join(str(c) for c in coord[: desc.z2_count])
    if desc.has_Z:
        return f"{bits}:{coord[-1]}"
    return bits


def _negate_coord(desc, coord):
    if not desc.has_Z:
        return coord
    return coord[:-1] + (-coord[-1],)


def bar_I(n, z_bound=0):
    """Count and representatives of the unoriented quotient of I_n.

    Negation acts trivially on the Z_2 summands, so only the Z
    coordinate (when present) is folded by z ~ -z.
    """
    desc = structure_set_P(n)
    elements = structure_set_elements(desc, z_bound)
    reps = tuple(e for e in elements if not desc.has_Z or e[-1] >= 0)
    return len(reps), reps


def relevant_unil(n):
    """Which UNil group obstructs splitting for P^n # P^n.

    Four-periodicity plus the sign-twisted two-semiperiodicity reduce
    every case to UNil_0 through UNil_3, of which only UNil_2 and
    UNil_3 are nonzero.
    """
    if n <= 3:
        raise ValueError("dimension must exceed 3")
    r = n % 4
    if r == 0:
        return "UNil3"
    if r == 1:
        return "UNil2"
    return "Zero"


@dataclass(frozen=True)
class ManifoldClass:
    pair: tuple
    theta: object
    not_connected_sum: bool
    epsilon: int
    identified_with: str = ""

    def theta_str(self):
        if self.theta is None:
            return "0"
        if hasattr(self.theta, "arf_class"):
            return f"[{compact_str(self.theta.arf_class.rep)}]"
        return compact_literal(self.theta)


@dataclass(frozen=True)
class ClassificationTable:
    n: int
    degree_cutoff: int
    z_bound: int
    rows: tuple
    folded: bool = False

    @property
    def desc(self):
        return structure_set_P(self.n)


def enumerate_J(n, degree_cutoff=0, z_bound=0):
    """The classification table for P^n # P^n under truncation.

    Rows are unordered pairs (with repetition) of structure-set
    coordinates crossed with switch-orbit representatives of the
    relevant UNil group; a row is flagged not_connected_sum when its
    theta-orbit is nonzero.
    """
    desc = structure_set_P(n)
    elements = structure_set_elements(desc, z_bound)
    group = relevant_unil(n)
    if group == "Zero":
        thetas = (None,)
    else:
        thetas = enumerate_truncated(group, degree_cutoff).orbit_reps
    epsilon = (-1) ** (n + 1)
    rows = []
    for pair in combinations_with_replacement(elements, 2):
        for theta in thetas:
            flagged = theta is not None and not theta.is_zero()
            rows.append(ManifoldClass(pair, theta, flagged, epsilon))
    return ClassificationTable(n, degree_cutoff, z_bound, tuple(rows))


def _row_key(desc, row):
    return (row.pair, row.theta_str())


def bar_J(n, table):
    """Fold the table by simultaneous negation of both Z coordinates.

    Away from n = 3 mod 4 the map is a bijection and the table is
    returned unchanged.  Otherwise rows whose pairs differ by negating
    both Z entries (same theta) are identified; the surviving row is the
    lexicographically smaller one and records the partner it absorbed.
    """
    if n != table.n:
        raise ValueError("dimension does not match the table")
    if n % 4 != 3:
        return table
    desc = table.desc
    by_key = {_row_key(desc, row): row for row in table.rows}
    out = []
    seen = set()
    for row in table.rows:
        key = _row_key(desc, row)
        if key in seen:
            continue
        neg_pair = tuple(sorted(_negate_coord(desc, c) for c in row.pair))
        neg_key = (neg_pair, row.theta_str())
        seen.add(key)
        if neg_key == key:
            out.append(row)
            continue
        seen.add(neg_key)
        partner = by_key[neg_key]
        absorbed = ";".join(coord_str(desc, c) for c in partner.pair)
        out.append(replace(row, identified_with=absorbed))
    return replace(table, rows=tuple(out), folded=True)


_COLUMNS = ("n", "pair_coord_1", "pair_coord_2", "theta", "not_connected_sum", "identified_with")


def table_rows_as_dicts(table):
    desc = table.desc
    for row in table.rows:
        yield {
            "n": table.n,
            "pair_coord_1": coord_str(desc, row.pair[0]),
            "pair_coord_2": coord_str(desc, row.pair[1]),
            "theta": row.theta_str(),
            "not_connected_sum": row.not_connected_sum,
            "identified_with": row.identified_with,
        }


def table_to_csv(table):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_COLUMNS)
    for d in table_rows_as_dicts(table):
        writer.writerow([d[c] if c != "not_connected_sum" else int(d[c]) for c in _COLUMNS])
    return buf.getvalue()


def table_to_json_dict(table):
    return {
        "n": table.n,
        "degree_cutoff": table.degree_cutoff,
        "z_bound": table.z_bound,
        "epsilon": (-1) ** (table.n + 1),
        "folded": table.folded,
        "rows": list(table_rows_as_dicts(table)),
    }
