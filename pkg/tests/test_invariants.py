import json
from math import comb
from pathlib import Path

import pytest
import sympy

from ccx import golden
from ccx.dcalg import catalog_get, direct_sum, tensor
from ccx.invariants import (EngineConsistencyError, aeppli, bott_chern, de_rham, dolbeault, frolicher_page,
                            frolicher_ranks, full_report, kunneth_mismatches, kunneth_tables, refined_betti,
                            render_diamond)
from ccx.liealg import build_double_complex, parse_structure_equations

DATA = Path(__file__).resolve().parents[1] / "src" / "ccx" / "data"


def cx(name):
    return catalog_get(name).complex()


def from_file(name):
    return build_double_complex(parse_structure_equations((DATA / name).read_text()))


def rows_of(diamond_text):
    return [tuple(int(x) for x in line.split()) for line in diamond_text.splitlines()]


# -- independent linear algebra for the oracle


def sym(m):
    return sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(m[i, j].re) + sympy.I * sympy.Rational(m[i, j].im))


def srank(m):
    return 0 if 0 in m.shape else m.rank(simplify=True)


def sympy_dolbeault(c, p, q):
    return c.dim(p, q) - srank(sym(c.delbar(p, q))) - srank(sym(c.delbar(p, q - 1)))


def sympy_bott_chern(c, p, q):
    stacked = sym(c.del_(p, q)).col_join(sym(c.delbar(p, q)))
    closed = c.dim(p, q) - srank(stacked)
    exact = srank(sym(c.del_(p - 1, q)) * sym(c.delbar(p - 1, q - 1)))
    return closed - exact


class TestKnownNumbers:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_projective_space(self, n):
        rep = full_report(cx(f"cpn:{n}"))
        assert dict(rep.hodge) == {(p, p): 1 for p in range(n + 1)}
        assert rep.bc == rep.hodge == rep.aeppli
        assert rep.betti == tuple(1 if k % 2 == 0 else 0 for k in range(2 * n + 1))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_torus(self, n):
        rep = full_report(cx(f"torus:{n}"))
        for p in range(n + 1):
            for q in range(n + 1):
                assert rep.h(p, q) == comb(n, p) * comb(n, q)
        assert rep.betti == tuple(comb(2 * n, k) for k in range(2 * n + 1))
        assert rep.r_max_col == 1

    def test_kodaira_thurston_surface(self):
        rep = full_report(from_file("kodaira-thurston.ccx"))
        assert rep.betti == (1, 3, 4, 3, 1)
        assert rep.h(1, 0) == 1 and rep.h(0, 1) == 2
        # surfaces degenerate at the first page
        assert rep.hodge_totals() == rep.betti
        # non-Kähler surfaces satisfy h_BC^{1,1} = b_2 - 2 h^{2,0} + 1
        assert dict(rep.bc)[(1, 1)] == rep.betti[2] - 2 * rep.h(2, 0) + 1 == 3

    def test_hopf_surface(self):
        rep = full_report(cx("hopf"))
        assert rep.betti == (1, 1, 0, 1, 1)
        assert rep.h(0, 1) == 1 and rep.h(1, 0) == 0
        assert dict(rep.bc)[(1, 1)] == 1
        assert dict(rep.aeppli)[(1, 1)] == 1

    def test_iwasawa(self):
        rep = full_report(cx("iwasawa"))
        assert rep.betti == golden.IWASAWA_BETTI.value
        assert rep.hodge_totals() == golden.IWASAWA_HODGE_TOTALS.value
        assert rep.h(1, 0) == golden.IWASAWA_H10.value
        assert rep.h(0, 1) == golden.IWASAWA_H01.value
        assert tuple(rows_of(rep.diamond())) == golden.DIAMOND_I_I.value
        assert rep.r_max_col == 2

    def test_iwasawa_bott_chern_literature_values(self):
        rep = full_report(cx("iwasawa"))
        bc = dict(rep.bc)
        assert [bc.get((p, 1 - p), 0) for p in (1, 0)] == [2, 2]
        assert [bc.get((p, 2 - p), 0) for p in (2, 1, 0)] == [3, 4, 3]
        assert [bc.get((p, 4 - p), 0) for p in (3, 2, 1)] == [2, 8, 2]
        assert sum(bc.values()) == sum(rep.hodge_totals()) == 48

    def test_data_file_matches_catalog(self):
        assert full_report(from_file("iwasawa.ccx")).tables() == full_report(cx("iwasawa")).tables()


class TestSympyOracle:
    """Dolbeault and Bott-Chern numbers recomputed with sympy ranks."""

    @pytest.mark.parametrize("name", ["iwasawa", "hopf", "threefold-N"])
    def test_dolbeault_and_bott_chern(self, name):
        c = cx(name)
        h, bc = dolbeault(c), bott_chern(c)
        for p in range(c.n + 1):
            for q in range(c.n + 1):
                assert h.get((p, q), 0) == sympy_dolbeault(c, p, q), (p, q)
                assert bc.get((p, q), 0) == sympy_bott_chern(c, p, q), (p, q)


class TestSpectralSequence:
    @pytest.mark.parametrize("name", ["iwasawa", "threefold-N", "xn:1", "hopf", "cp2"])
    def test_subspace_and_rank_methods_agree(self, name, backend):
        c = cx(name)
        for orientation in ("column", "row"):
            for r in range(1, c.n + 2):
                assert frolicher_page(c, r, orientation) == frolicher_ranks(c, r, orientation)

    def test_first_page_is_dolbeault(self):
        c = cx("iwasawa")
        e1, _ = frolicher_page(c, 1)
        assert e1 == {k: v for k, v in dolbeault(c).items() if v}

    def test_page_cap(self):
        rep = full_report(cx("iwasawa"), pages=1)
        assert len(rep.frolicher_col) == 1

    def test_bad_page_arguments(self):
        with pytest.raises(ValueError):
            frolicher_page(cx("cp1"), 0)
        with pytest.raises(ValueError):
            frolicher_page(cx("cp1"), 1, "diagonal")

    def test_refined_betti_sum_to_betti(self):
        c = cx("threefold-N")
        rb = refined_betti(c)
        betti = de_rham(c)
        for k, b in enumerate(betti):
            assert sum(v for (kk, _, _), v in rb.items() if kk == k) == b


class TestBackends:
    def test_report_independent_of_backend(self, backend):
        rep = full_report(cx("iwasawa"))
        assert rep.bc == full_report(from_file("iwasawa.ccx")).bc
        assert sum(v for _, v in rep.bc) == 48


class TestReportOutput:
    def test_json_is_deterministic(self):
        a = full_report(cx("iwasawa")).to_json()
        b = full_report(from_file("iwasawa.ccx")).to_json()
        assert json.loads(a)["schema"] == "ccx.report/1"
        assert json.loads(a)["hodge"] == json.loads(b)["hodge"]
        assert a == full_report(cx("iwasawa")).to_json()

    def test_render_diamond_layout(self):
        text = render_diamond(1, {(0, 0): 1, (1, 0): 2, (0, 1): 3, (1, 1): 4})
        assert rows_of(text) == [(4,), (2, 3), (1,)]
        assert text.splitlines()[1].index("2") < text.splitlines()[1].index("3")

    def test_report_addition_matches_direct_sum(self):
        a, b = cx("iwasawa"), cx("threefold-N")
        assert (full_report(a) + full_report(b)).tables() == full_report(direct_sum(a, b)).tables()

    def test_scaling(self):
        rep = full_report(cx("cp1"))
        assert rep.scale(3).betti == (3, 0, 3)

    def test_bc_and_aeppli_are_dual(self):
        c = cx("iwasawa")
        bc, ae = bott_chern(c), aeppli(c)
        for (p, q), v in bc.items():
            assert ae.get((c.n - p, c.n - q), 0) == v


class TestKunneth:
    @pytest.mark.parametrize("left,right", [("cp1", "hopf"), ("iwasawa", "cp1"), ("hopf", "hopf"), ("xn:1", "torus:1")])
    def test_multiplicative_tables(self, left, right):
        a, b = cx(left), cx(right)
        prod = full_report(tensor(a, b))
        assert kunneth_mismatches(full_report(a), full_report(b), prod) == []

    def test_bott_chern_is_not_multiplicative(self):
        # both factors fail the ∂∂̄-lemma, so the naive convolution is wrong
        a = full_report(cx("hopf"))
        prod = full_report(tensor(cx("hopf"), cx("hopf")))
        conv = {}
        for (p, q), v in a.bc:
            for (s, t), w in a.bc:
                conv[(p + s, q + t)] = conv.get((p + s, q + t), 0) + v * w
        assert {k: v for k, v in conv.items() if v} != dict(prod.bc)
        assert "bc" not in kunneth_tables(a, a)

    def test_bott_chern_multiplicative_with_a_kahler_factor(self):
        a, b = full_report(cx("cp1")), full_report(cx("hopf"))
        prod = full_report(tensor(cx("cp1"), cx("hopf")))
        conv = {}
        for (p, q), v in a.bc:
            for (s, t), w in b.bc:
                conv[(p + s, q + t)] = conv.get((p + s, q + t), 0) + v * w
        assert conv == dict(prod.bc)


def test_consistency_error_is_an_assertion():
    assert issubclass(EngineConsistencyError, AssertionError)
