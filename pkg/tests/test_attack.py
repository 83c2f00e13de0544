"""End-to-end hull attack: modulus recovery, pipeline, failure modes."""

import json
import random
from fractions import Fraction

import pytest

from hullattack.attack import (
    AttackResult,
    _integer_root,
    hull_attack,
    recover_modulus,
    verify_isomorphism,
)
from hullattack.codes import code_from_rows, random_free_lcd
from hullattack.equiv import brute_force_spep
from hullattack.errors import (
    BadModulus,
    DimensionMismatch,
    HullNotTrivial,
    NoCandidate,
    SpepFailed,
)
from hullattack.lattices import (
    LatticeBasis,
    construction_a,
    lattice_equal,
    random_rational_orthogonal,
    rotate,
)
from hullattack.linalg import RatMatrix


def diag_lattice(entries) -> LatticeBasis:
    n = len(entries)
    rows = [[Fraction(entries[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    return LatticeBasis(n, RatMatrix.from_rows(rows))


def make_instance(k, n, m, seed, depth=None):
    """Two rotations of the same Construction A lattice plus the secrets."""
    rng = random.Random(seed)
    code = random_free_lcd(k, n, m, seed=rng.randrange(10**9))
    base = construction_a(code)
    o1 = random_rational_orthogonal(n, seed=rng.randrange(10**9), depth=depth)
    o2 = random_rational_orthogonal(n, seed=rng.randrange(10**9), depth=depth)
    return rotate(base, o1), rotate(base, o2), code


class TestIntegerRoot:
    def test_exact_roots(self):
        assert _integer_root(3**7, 7) == 3
        assert _integer_root(15**4, 4) == 15
        assert _integer_root(2**40, 40) == 2
        assert _integer_root(10, 1) == 10

    def test_inexact(self):
        assert _integer_root(10, 2) is None
        assert _integer_root(3**7 + 1, 7) is None


class TestRecoverModulus:
    def test_prime_power_example(self):
        # det 9 in dimension 4: 3^2 and 9^1 both fit.
        lat = diag_lattice([9, 1, 1, 1])
        assert recover_modulus(lat) == [(3, 2), (9, 3)]

    def test_unimodular_has_no_candidates(self):
        assert recover_modulus(diag_lattice([1, 1, 1])) == []

    def test_rational_determinant_has_no_candidates(self):
        lat = LatticeBasis(
            2, RatMatrix.from_rows([[Fraction(1, 2), Fraction(0)], [Fraction(0), Fraction(1)]])
        )
        assert recover_modulus(lat) == []

    def test_candidates_increase(self):
        # det 64 in dimension 4: exponents are capped at n, so 2^6 is out.
        lat = diag_lattice([4, 4, 4, 1])
        assert recover_modulus(lat) == [(4, 1), (8, 2), (64, 3)]

    def test_matches_construction_a_determinant(self):
        rng = random.Random(7)
        for _ in range(15):
            k = rng.choice([2, 3, 5, 6, 9])
            n = rng.randrange(2, 5)
            m = rng.randrange(1, n)  # m < n keeps the determinant > 1
            code = random_free_lcd(k, n, m, seed=rng.randrange(10**9))
            cands = recover_modulus(construction_a(code))
            assert (k, m) in cands


class TestHullAttack:
    @pytest.mark.parametrize("k", [3, 5, 9, 15, 2, 6])
    def test_recovers_isomorphism(self, k):
        n, m = 4, 2
        l1, l2, _ = make_instance(k, n, m, seed=100 + k, depth=6)
        res = hull_attack(l1, l2)
        assert verify_isomorphism(l1, l2, res.o_star.matrix)
        assert lattice_equal(rotate(l2, res.o_star), l1)

    def test_supplied_modulus_matches_recovery(self):
        l1, l2, _ = make_instance(5, 4, 2, seed=11, depth=6)
        auto = hull_attack(l1, l2)
        manual = hull_attack(l1, l2, k=5)
        assert auto.o_star == manual.o_star
        assert any(e.get("supplied") for e in manual.transcript if e["step"] == "modulus")

    def test_unrotated_instance(self):
        code = random_free_lcd(3, 4, 2, seed=4)
        lat = construction_a(code)
        res = hull_attack(lat, lat)
        assert verify_isomorphism(lat, lat, res.o_star.matrix)

    def test_deterministic(self):
        l1, l2, _ = make_instance(3, 4, 2, seed=21, depth=6)
        assert hull_attack(l1, l2).o_star == hull_attack(l1, l2).o_star

    def test_transcript_is_json_safe_and_ordered(self):
        l1, l2, _ = make_instance(6, 4, 2, seed=31, depth=6)
        res = hull_attack(l1, l2)
        steps = [e["step"] for e in res.transcript]
        assert steps == ["modulus", "hull", "zlip", "zlip", "codes", "spep", "verify"]
        json.dumps(res.to_dict())
        spep_entry = next(e for e in res.transcript if e["step"] == "spep")
        assert spep_entry["closure"] == "extended"

    def test_full_code_gives_no_candidate(self):
        # m = n makes the lattice unimodular: nothing to recover.
        code = random_free_lcd(3, 3, 3, seed=2)
        lat = construction_a(code)
        with pytest.raises(NoCandidate) as exc_info:
            hull_attack(lat, lat)
        assert isinstance(exc_info.value.transcript, list)

    def test_full_code_with_supplied_k(self):
        # The hull of the full code is kZ^n, so a supplied k still works.
        code = random_free_lcd(3, 3, 3, seed=2)
        lat = construction_a(code)
        res = hull_attack(lat, lat, k=3)
        assert verify_isomorphism(lat, lat, res.o_star.matrix)

    def test_non_lcd_code_fails_hull_signature(self):
        # <(1,2)> over Z_5 is self-orthogonal-ish: Gram 1+4 = 0 mod 5.
        code = code_from_rows(5, [[1, 2, 0, 0], [0, 0, 1, 2]])
        lat = construction_a(code)
        with pytest.raises(HullNotTrivial) as exc_info:
            hull_attack(lat, lat)
        steps = [e["step"] for e in exc_info.value.transcript]
        assert steps == ["modulus"]

    def test_non_lcd_code_fails_with_supplied_k(self):
        code = code_from_rows(5, [[1, 2, 0, 0], [0, 0, 1, 2]])
        lat = construction_a(code)
        with pytest.raises(HullNotTrivial):
            hull_attack(lat, lat, k=5)

    def test_multiple_of_four_modulus_rejected(self):
        lat = diag_lattice([4, 1, 1])
        with pytest.raises(BadModulus):
            hull_attack(lat, lat, k=4)

    def test_wrong_supplied_modulus(self):
        l1, l2, _ = make_instance(3, 4, 2, seed=41, depth=6)
        with pytest.raises(HullNotTrivial):
            hull_attack(l1, l2, k=7)

    def test_non_equivalent_codes_fail_spep(self):
        rng = random.Random(77)
        found = False
        while not found:
            c1 = random_free_lcd(5, 4, 2, seed=rng.randrange(10**9))
            c2 = random_free_lcd(5, 4, 2, seed=rng.randrange(10**9))
            if brute_force_spep(c1, c2).outcome != "not_equivalent":
                continue
            found = True
        o1 = random_rational_orthogonal(4, seed=5, depth=6)
        o2 = random_rational_orthogonal(4, seed=6, depth=6)
        l1 = rotate(construction_a(c1), o1)
        l2 = rotate(construction_a(c2), o2)
        with pytest.raises(SpepFailed) as exc_info:
            hull_attack(l1, l2)
        steps = [e["step"] for e in exc_info.value.transcript]
        assert "spep" in steps

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            hull_attack(diag_lattice([3, 1]), diag_lattice([3, 1, 1]))


class TestVerifyIsomorphism:
    def test_accepts_true_witness(self):
        l1, l2, _ = make_instance(3, 3, 1, seed=51, depth=4)
        res = hull_attack(l1, l2)
        assert verify_isomorphism(l1, l2, res.o_star.matrix)

    def test_rejects_non_orthogonal(self):
        lat = diag_lattice([3, 1])
        m = RatMatrix.from_rows([[Fraction(2), Fraction(0)], [Fraction(0), Fraction(1)]])
        assert not verify_isomorphism(lat, lat, m)

    def test_rejects_wrong_lattice(self):
        l1 = diag_lattice([3, 1])
        l2 = diag_lattice([1, 3])
        ident = RatMatrix.identity(2)
        assert not verify_isomorphism(l1, l2, ident)
        swap = RatMatrix.from_rows([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]])
        assert verify_isomorphism(l1, l2, swap)

    def test_rejects_shape_mismatch(self):
        l1 = diag_lattice([3, 1])
        assert not verify_isomorphism(l1, diag_lattice([3, 1, 1]), RatMatrix.identity(2))
        assert not verify_isomorphism(l1, l1, RatMatrix.identity(3))


class TestResultSerialization:
    def test_round_trip(self):
        l1, l2, _ = make_instance(3, 3, 1, seed=61, depth=4)
        res = hull_attack(l1, l2)
        again = AttackResult.from_dict(json.loads(json.dumps(res.to_dict())))
        assert again.o_star == res.o_star
        assert again.transcript == res.transcript
