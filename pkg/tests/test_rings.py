from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ccx import golden
from ccx.dcalg import catalog_get
from ccx.invariants import full_report
from ccx.rings import (DegreeBoundError, FormalViolationError, GradedPoly, RingError, apply_morphism,
                       bimero_basis, certificate_value, check_identity_text, check_refusal, diagonalize,
                       diamond_to_poly, formal_basis, formal_basis_labels,
                       formal_rank, formal_violations, generator_monomials,
                       generator_ring_rank, hermite_rows, left_kernel, manifold_polynomials, membership,
                       named_elements, parse_named, parse_poly, phi, psi, quotient_by_c_check, rb_series_rank,
                       rbform_generators_check, solve_lattice, top_generator_coefficients, verify_bimero,
                       verify_presentation)

int_matrix = st.integers(1, 5).flatmap(
    lambda rows: st.integers(1, 5).flatmap(
        lambda cols: st.lists(st.lists(st.integers(-9, 9), min_size=cols, max_size=cols),
                              min_size=rows, max_size=rows)))


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


class TestPolynomials:
    def test_parse_and_print(self):
        f = parse_poly("(x+y)^2*z - 2*x*y*z", "HXY")
        assert f == parse_poly("x^2*z + y^2*z", "HXY")
        assert str(f) == "x^2*z + y^2*z"
        assert f.degree == 1

    def test_inhomogeneous_degree(self):
        f = parse_poly("z + z^2", "HXY")
        assert not f.is_homogeneous()
        with pytest.raises(ValueError):
            _ = f.degree
        assert f.component(2) == parse_poly("z^2", "HXY")

    def test_unknown_variable(self):
        with pytest.raises(RingError):
            parse_poly("w*z", "HXY")

    def test_mixed_rings(self):
        with pytest.raises(RingError):
            parse_poly("z", "HXY") + parse_poly("z", "DR")

    def test_arithmetic(self):
        x = GradedPoly.var("HXY", "x")
        assert (x + 1) ** 2 == x * x + 2 * x + 1
        assert not (x - x)
        assert (x * Fraction(1, 2)).is_integral() is False


class TestMorphisms:
    def test_hodge_to_de_rham(self):
        g = named_elements("HXY")
        d = named_elements("DR")
        for name in "ABCD":
            assert apply_morphism("s", g[name]) == d[name]

    def test_euler_characteristic_of_a_point_class(self):
        assert apply_morphism("chi", named_elements("HXY")["A"]) == parse_poly("2*z", "Z")

    def test_relations_vanish(self):
        g4 = named_elements("GEN4")
        assert not phi(g4["G"])
        for name in "QRST":
            assert not psi(g4[name]), name

    def test_fd_needs_a_pair(self):
        with pytest.raises(RingError):
            apply_morphism("FD", parse_poly("z", "HXY"))

    def test_unknown_morphism(self):
        with pytest.raises(RingError):
            apply_morphism("omega", parse_poly("z", "HXY"))


class TestIdentities:
    @pytest.mark.parametrize("text,ring,prov,note", golden.RING_IDENTITIES)
    def test_listed_identities(self, text, ring, prov, note):
        assert check_identity_text(text, ring)

    def test_printed_q_sign_is_wrong(self):
        assert not check_identity_text("Q=AR-CS", "HXY")

    @pytest.mark.parametrize("name", sorted(golden.DISPLAYED_ELEMENTS))
    def test_displayed_diamonds(self, name):
        expr, dia = golden.DISPLAYED_ELEMENTS[name]
        assert parse_named(expr, "HXY") == diamond_to_poly(dia.value)

    def test_printed_bbt_diamond_is_off(self):
        assert parse_named("B^2*T", "HXY") != diamond_to_poly(golden.DIAMOND_BBT.value)

    @pytest.mark.parametrize("expr,terms,prov", golden.REALIZATIONS)
    def test_realizations(self, expr, terms, prov):
        total = sum((diamond_to_poly(d.value) * c for c, d in terms), GradedPoly.zero("HXY"))
        assert parse_named(expr, "HXY") == total

    def test_bad_identity_text(self):
        with pytest.raises(RingError):
            check_identity_text("A=B=C")


class TestLattice:
    @settings(max_examples=80, deadline=None)
    @given(int_matrix)
    def test_diagonalization_is_unimodular(self, rows):
        ncols = len(rows[0])
        dz = diagonalize(rows, ncols)
        got = matmul(matmul(dz.U, rows), dz.V)
        for i, row in enumerate(got):
            for j, v in enumerate(row):
                assert v == (dz.diagonal[i] if i == j and i < dz.rank else 0)
        assert abs(sympy.Matrix(dz.U).det()) == 1
        assert abs(sympy.Matrix(dz.V).det()) == 1
        assert dz.rank == sympy.Matrix(rows).rank()

    @settings(max_examples=60, deadline=None)
    @given(int_matrix, st.data())
    def test_solutions_are_exact(self, rows, data):
        coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=len(rows), max_size=len(rows)))
        target = [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(len(rows[0]))]
        sol = solve_lattice(rows, target)
        assert sol.solvable
        assert [sum(c * r[j] for c, r in zip(sol.coefficients, rows)) for j in range(len(target))] == target

    def test_integral_refusal(self):
        sol = solve_lattice([[2, 4]], [1, 2])
        assert not sol.solvable and sol.kind == "integral" and sol.modulus == 2
        assert solve_lattice([[2, 4]], [1, 2], rational=True).coefficients == (Fraction(1, 2),)

    def test_rational_refusal(self):
        sol = solve_lattice([[1, 0]], [0, 1])
        assert sol.kind == "rational"
        assert sum(a * b for a, b in zip(sol.functional, [1, 0])) == 0

    def test_hermite_and_left_kernel(self):
        rows = [[2, 4, 6], [1, 2, 3], [0, 1, 1]]
        assert hermite_rows(rows, 3) == [[1, 0, 1], [0, 1, 1]]
        for w in left_kernel(rows, 3):
            assert [sum(w[i] * rows[i][j] for i in range(3)) for j in range(3)] == [0, 0, 0]


class TestFormalRings:
    def test_ranks(self):
        assert [formal_rank("Hform", n) for n in range(6)] == [1, 2, 5, 8, 13, 18]
        assert [formal_rank("DRform", n) for n in range(6)] == [1, 2, 3, 4, 5, 6]
        assert tuple(formal_rank("HDRform", n) for n in range(6)) == golden.HDRFORM_RANKS.value
        assert formal_rank("RBprime", 3) == golden.RBPRIME_RANK_3.value

    def test_rbprime_rank_matches_series(self):
        assert [formal_rank("RBprime", n) for n in range(8)] == [rb_series_rank(n) for n in range(8)]

    def test_generator_counts(self):
        assert generator_ring_rank((1, 1, 2, 2), 4) == len(generator_monomials(dict(A=1, B=1, C=2, D=2), 4))

    def test_basis_elements_are_members(self):
        for f in formal_basis("Hform", 3):
            assert not formal_violations("Hform", f)

    def test_membership_certificate(self):
        ad = parse_named("A*d", "HXY")
        cert = membership("Hform", ad)
        basis = dict(zip(formal_basis_labels("Hform", 3), formal_basis("Hform", 3)))
        assert cert
        assert sum((basis[label] * c for label, c in cert.terms), GradedPoly.zero("HXY")) == ad

    def test_membership_refusal(self):
        r = membership("Hform", parse_poly("x*z", "HXY"))
        assert not r and r.kind == "conditions"

    def test_generator_membership(self):
        g = named_elements("HXY")
        gens = {k: g[k] for k in "ABCD"}
        cert = membership(gens, g["d"])
        assert certificate_value(cert, gens) == g["d"]
        refusal = membership({"B2": g["B"] * 2}, g["B"])
        assert refusal.kind == "integral" and check_refusal(refusal, {"B2": g["B"] * 2}, 1)
        refusal = membership({"A": g["A"]}, parse_poly("x*z", "HXY"))
        assert refusal.kind == "rational" and check_refusal(refusal, {"A": g["A"]}, 1)


class TestPresentations:
    @pytest.mark.parametrize("morphism", ["phi", "psi", "Phi"])
    @pytest.mark.parametrize("n", range(0, 6))
    def test_default_presentations(self, morphism, n):
        assert verify_presentation(morphism, None, n).ok

    def test_missing_relation_is_detected(self):
        rep = verify_presentation("psi", [named_elements("GEN4")["Q"]], 2, strict=False)
        assert not rep.ok and rep.ideal_rank < rep.kernel_rank

    def test_degree_bound(self):
        with pytest.raises(DegreeBoundError):
            verify_presentation("phi", None, 5, bound=4)

    def test_rbform_generators(self):
        rep = rbform_generators_check(5)
        assert rep.ok
        for d in rep.degrees:
            for name, over_z, over_q in d.new_generators:
                assert over_z, name

    @pytest.mark.parametrize("n", [3, 5])
    def test_family_top_generators(self, n):
        rep = full_report(catalog_get(f"xn:{(n - 1) // 2}").complex())
        rb = manifold_polynomials(rep).rb
        coeffs = top_generator_coefficients(rb, n)
        assert (coeffs[f"M{n}"], coeffs[f"L{n}"]) == (1, 0)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_quotient_by_c(self, n):
        listed, expected, unimodular = quotient_by_c_check(n)
        assert listed == expected and unimodular


class TestBimero:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_verify(self, n):
        assert verify_bimero(n).ok

    def test_basis_size(self):
        assert len(bimero_basis(4)) == 8


class TestManifoldPolynomials:
    @pytest.mark.parametrize("name", ["iwasawa", "hopf", "xn:1", "cp2"])
    def test_geometric_reports_pass(self, name):
        polys = manifold_polynomials(full_report(catalog_get(name).complex()))
        assert polys.ok, polys.failures()

    def test_iwasawa_frolicher_defect(self):
        polys = manifold_polynomials(full_report(catalog_get("iwasawa").complex()))
        assert polys.fd == parse_named(golden.IWASAWA_FD.value, "DR")

    def test_bad_report_raises(self):
        import dataclasses

        rep = full_report(catalog_get("cp1").complex())
        broken = dataclasses.replace(rep, hodge=(((0, 0), 1), ((1, 0), 1), ((1, 1), 1)))
        with pytest.raises(FormalViolationError):
            manifold_polynomials(broken)
        assert not manifold_polynomials(broken, strict=False).ok
