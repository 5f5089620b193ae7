import random
from fractions import Fraction

import pytest

from tests.helpers_oracles import (
    all_z4_vectors,
    idem_relation_subgroup,
    versch_relation_subgroup,
)
from unilcalc.polynomials import (
    Polynomial,
    even_odd_decompose,
    idem_reduce,
    parse_poly,
    versch_reduce,
)


def F2(s):
    return parse_poly(s, "F2")


def Z4(s):
    return parse_poly(s, "Z4")


class TestArithmetic:
    def test_square_over_f2(self):
        p = F2("t+1")
        assert str(p * p) == "1*t^2+1*t^0"

    def test_square_over_z(self):
        p = parse_poly("t+1", "Z")
        assert str(p * p) == "1*t^2+2*t^1+1*t^0"

    def test_z4_residues(self):
        assert str(Z4("3*t") * Z4("2*t")) == "2*t^2"
        assert str(Z4("2*t") + Z4("2*t")) == "0"

    def test_q_fractions(self):
        p = parse_poly("3/2*t^1+1", "Q")
        assert p.coefficient(1) == Fraction(3, 2)
        assert str(p + p) == "3*t^1+2*t^0"

    def test_degree_sentinel(self):
        assert Polynomial.zero("Z").degree == -1
        assert parse_poly("5", "Z").degree == 0

    def test_ring_mismatch_rejected(self):
        with pytest.raises(ValueError, match="ring mismatch"):
            F2("t") + Z4("t")

    def test_substitute(self):
        p = parse_poly("t^2+t", "Z")
        q = parse_poly("t+1", "Z")
        assert str(p.substitute(q)) == "1*t^2+3*t^1+2*t^0"

    def test_negative_coefficients_round_trip(self):
        p = parse_poly("t^2-2*t+1", "Z")
        assert str(p) == "1*t^2-2*t^1+1*t^0"
        assert parse_poly(str(p), "Z") == p


class TestParser:
    @pytest.mark.parametrize(
        "text,canon",
        [
            ("t", "1*t^1"),
            ("t^4 + t", "1*t^4+1*t^1"),
            ("3", "3*t^0"),
            ("2*t", "2*t^1"),
            ("1*t^2+0*t^1+1*t^0", "1*t^2+1*t^0"),
            ("t+t", "2*t^1"),
        ],
    )
    def test_accepted_forms(self, text, canon):
        assert str(parse_poly(text, "Z")) == canon

    def test_canonical_residues(self):
        assert str(parse_poly("5*t^1", "Z4")) == "1*t^1"
        assert str(parse_poly("2*t^1", "F2")) == "0"

    def test_error_carries_position(self):
        with pytest.raises(ValueError, match="position 3"):
            parse_poly("t^2+t^^3", "F2")
        with pytest.raises(ValueError, match="negative exponent"):
            parse_poly("t^-1", "F2")
        with pytest.raises(ValueError, match="fractional"):
            parse_poly("1/2*t", "Z4")

    def test_round_trip_random(self):
        rng = random.Random(11)
        for _ in range(200):
            ring = rng.choice(["Z", "F2", "Z4"])
            cs = tuple(rng.randint(-6, 6) for _ in range(rng.randint(0, 7)))
            p = Polynomial(ring, cs)
            assert parse_poly(str(p), ring) == p or p.is_zero()


class TestEvenOdd:
    def test_example(self):
        ev, od = even_odd_decompose(F2("t^2+t+1"))
        assert str(ev) == "1*t^1+1*t^0"
        assert str(od) == "1*t^0"

    def test_reconstruction_random(self):
        rng = random.Random(5)
        t = Polynomial.t("F2")
        for _ in range(300):
            p = Polynomial.from_bits(rng.getrandbits(14))
            ev, od = even_odd_decompose(p)
            assert ev * ev + t * od * od == p


class TestIdemReduce:
    @pytest.mark.parametrize(
        "text,canon",
        [
            ("t^4+t", "0"),
            ("t^2+1", "1*t^1+1*t^0"),
            ("t^8", "1*t^1"),
            ("t^6", "1*t^3"),
            ("t^5+t^3+t", "1*t^5+1*t^3+1*t^1"),
            ("1", "1*t^0"),
        ],
    )
    def test_examples(self, text, canon):
        assert str(idem_reduce(F2(text))) == canon

    def test_canonical_support(self):
        for bits in range(1 << 9):
            rep = idem_reduce(Polynomial.from_bits(bits)).rep
            for k in range(2, rep.degree + 1, 2):
                assert rep.coefficient(k) == 0

    def test_additive(self):
        rng = random.Random(2)
        for _ in range(200):
            a = Polynomial.from_bits(rng.getrandbits(12))
            b = Polynomial.from_bits(rng.getrandbits(12))
            assert idem_reduce(a) + idem_reduce(b) == idem_reduce(a + b)

    def test_against_relation_subgroup(self):
        # oracle: the reduction must differ from its input by a relation,
        # be constant on cosets, and separate distinct cosets
        max_exp = 6
        rel = idem_relation_subgroup(max_exp)
        images = set()
        for bits in range(1 << (max_exp + 1)):
            rep = idem_reduce(Polynomial.from_bits(bits)).rep.to_bits()
            assert bits ^ rep in rel
            images.add(rep)
            for r in rel:
                other = idem_reduce(Polynomial.from_bits(bits ^ r)).rep.to_bits()
                assert other == rep
        assert len(images) == (1 << (max_exp + 1)) // len(rel)


class TestVerschReduce:
    @pytest.mark.parametrize(
        "text,canon",
        [
            ("3*t^2", "1*t^2+2*t^1"),
            ("2*t^4", "2*t^1"),
            ("t", "1*t^1"),
            ("2*t^2", "2*t^1"),
            ("3*t^4+2*t^2", "1*t^4"),  # 2t^2+2t^2 cancels mod 4
        ],
    )
    def test_examples(self, text, canon):
        assert str(versch_reduce(Z4(text))) == canon

    def test_constant_term_rejected(self):
        with pytest.raises(ValueError, match="constant"):
            versch_reduce(Z4("1+t"))

    def test_canonical_even_coefficients(self):
        rng = random.Random(3)
        for _ in range(400):
            cs = (0,) + tuple(rng.randint(0, 3) for _ in range(8))
            rep = versch_reduce(Polynomial("Z4", cs)).rep
            for k in range(2, rep.degree + 1, 2):
                assert rep.coefficient(k) in (0, 1)

    def test_against_relation_subgroup(self):
        max_exp = 6
        rel = versch_relation_subgroup(max_exp)
        n = max_exp + 1

        def vec(poly):
            return tuple(poly.coefficient(k) for k in range(n))

        def sub(u, v):
            return tuple((a - b) % 4 for a, b in zip(u, v))

        images = set()
        for v in all_z4_vectors(max_exp):
            rep = vec(versch_reduce(Polynomial("Z4", v)).rep)
            assert sub(v, rep) in rel
            images.add(rep)
        assert len(images) == 4**max_exp // len(rel)
