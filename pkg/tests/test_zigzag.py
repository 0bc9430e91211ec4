import dataclasses

import pytest

from ccx import golden
from ccx.dcalg import ZigzagClass, catalog_get, tensor, zigzag_model
from ccx.invariants import full_report
from ccx.zigzag import (ReconstructionError, SymOrbit, ZigzagSum, aggregate_identities, blowup_delta, c_class,
                        decompose, exceptional_class, is_in_Uform, quotient_basis_mod_C, reconstruct_report,
                        sym_basis_Uform, unit_class, uring_mul, zigzags_fitting)

Z = ZigzagClass.parse


def cx(name):
    return catalog_get(name).complex()


class TestDecomposition:
    def test_recovers_a_constructed_sum(self):
        # built from models, so the answer is known without any cohomology
        want = ZigzagSum(3, {Z("S[1; 1,0]"): 2, Z("S1[1; 1,1]"): 1, Z("S2[2; 1,0]"): 3, Z("S[3; 2,1]"): 1})
        assert decompose(want.model()) == want

    def test_iwasawa(self):
        x = decompose(cx("iwasawa"))
        assert sum(m for z, m in x.items() if not z.is_odd) == golden.IWASAWA_EVEN_ZIGZAGS.value
        for label, m in golden.IWASAWA_ORBIT_MULTS.value.items():
            assert x.mult(Z(label)) == m

    @pytest.mark.parametrize("name", ["hopf", "threefold-N", "xn:1", "torus:2"])
    def test_reconstruction_reproduces_tables(self, name, backend):
        c = cx(name)
        rep = full_report(c)
        assert reconstruct_report(decompose(c, rep)).tables() == rep.tables()

    def test_gate_raises_on_inconsistent_report(self):
        c = cx("iwasawa")
        rep = full_report(c)
        # one Bott-Chern number too many cannot come from any zigzag sum
        tampered = dataclasses.replace(rep, bc=rep.bc + (((3, 0), 5),))
        with pytest.raises(ReconstructionError):
            decompose(c, tampered)

    def test_geometric_classes_are_symmetric(self):
        for name in ("iwasawa", "hopf", "xn:1"):
            ok, bad = is_in_Uform(decompose(cx(name)))
            assert ok, bad


class TestRing:
    def test_unit(self):
        x = decompose(cx("hopf"))
        assert uring_mul(unit_class(), x) == x

    def test_commutative(self):
        x = decompose(cx("hopf"))
        y = decompose(cx("cp1"))
        assert uring_mul(x, y) == uring_mul(y, x)

    def test_product_matches_tensor(self):
        a, b = cx("hopf"), cx("cp1")
        assert uring_mul(decompose(a), decompose(b)) == decompose(tensor(a, b))

    def test_symmetries_match_dual_and_conjugate(self):
        from ccx.dcalg import conjugate, dual

        c = cx("threefold-N")
        x = decompose(c)
        assert decompose(conjugate(c)) == x.tau()
        assert decompose(dual(c)) == x.sigma()

    def test_blowup_is_multiplication_by_exceptional_class(self):
        assert blowup_delta(unit_class(), 2, 2) == c_class()
        centre = decompose(cx("cp1"))
        assert blowup_delta(centre, 3, 2) == uring_mul(centre, exceptional_class(2))

    def test_blowup_argument_errors(self):
        with pytest.raises(ValueError):
            blowup_delta(unit_class(), 2, 1)
        with pytest.raises(ValueError):
            blowup_delta(unit_class(), 3, 2)


class TestFormalRing:
    def test_sym_basis_sizes(self):
        assert [len(sym_basis_Uform(n)) for n in range(1, 6)] == [2, 5, 18, 39, 70]

    def test_quotient_sizes(self):
        assert [len(quotient_basis_mod_C(n)) for n in range(1, 6)] == [2, 4, 16, 34, 52]

    def test_degree_three_exclusions(self):
        kept = set(quotient_basis_mod_C(3))
        excluded = set(sym_basis_Uform(3)) - kept
        want = {SymOrbit(Z(label), 3) for label in golden.QUOTIENT_MOD_C_EXCLUSIONS_3.value}
        assert excluded == want

    def test_orbit_closed_under_symmetries(self):
        for orb in sym_basis_Uform(3):
            for z in orb.elements:
                assert z.tau() in orb.elements and z.sigma(3) in orb.elements

    def test_every_fitting_zigzag_fits(self):
        for z in zigzags_fitting(2):
            assert z.fits(2)

    def test_membership_conditions(self):
        ok, bad = is_in_Uform(ZigzagSum(2, {Z("S[1; 0,1]"): 1}))
        assert not ok and any(v.startswith("U2") for v in bad)
        ok, bad = is_in_Uform(ZigzagSum(2, {Z("S1[1; 1,0]"): 1, Z("S2[1; 0,1]"): 1}))
        assert not ok and any(v.startswith("U4") for v in bad)
        ok, bad = is_in_Uform(ZigzagSum(1, {Z("S[1; 0,0]"): 1}))
        assert any(v.startswith("U3") for v in bad)

    def test_orbit_coefficients_reject_asymmetric_sums(self):
        with pytest.raises(ValueError):
            ZigzagSum(3, {Z("S[1; 1,0]"): 1}).orbit_coefficients()


class TestAggregates:
    @pytest.mark.parametrize("name", ["iwasawa", "hopf", "threefold-N", "xn:1"])
    def test_normalizations(self, name):
        c = cx(name)
        rep = full_report(c)
        long_check, even_check = aggregate_identities(rep, decompose(c, rep))
        # the long-zigzag count equals twice the Bott-Chern excess
        assert long_check.doubled
        assert even_check.plain

    def test_doubling_is_needed(self):
        c = cx("hopf")
        rep = full_report(c)
        long_check, _ = aggregate_identities(rep, decompose(c, rep))
        assert not long_check.plain


class TestText:
    def test_roundtrip(self):
        x = decompose(cx("iwasawa"))
        assert ZigzagSum.parse(x.to_text()) == x

    def test_parse_errors(self):
        with pytest.raises(ValueError):
            ZigzagSum.parse("1 * S[0; 0,0] @ 1\n1 * S[0; 0,0] @ 2\n")
        with pytest.raises(ValueError):
            ZigzagSum.parse("")
        with pytest.raises(ValueError):
            ZigzagSum.parse("two * S[0; 0,0] @ 1")

    def test_arithmetic(self):
        x = ZigzagSum.of(Z("S[1; 1,0]"), 2)
        assert (x - x) == ZigzagSum(2)
        assert not (x - x)
        assert x.scale(3).mult(Z("S[1; 1,0]")) == 3

    def test_negative_sum_has_no_model(self):
        with pytest.raises(ValueError):
            ZigzagSum.of(Z("S[0; 0,0]"), 0, -1).model()


def test_model_of_single_class():
    z = Z("S1[2; 0,1]")
    assert decompose(zigzag_model(z, 2)) == ZigzagSum.of(z, 2)
