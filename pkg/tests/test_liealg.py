import pytest

from ccx.exactfield import I, ONE
from ccx.liealg import (DSquaredError, IndexRangeError, NonIntegrableError, NonNilpotentWarning, StructureEquations,
                        StructureSyntaxError, build_double_complex, d_form, form_to_text, is_nilpotent,
                        parse_structure_equations, validate_d_squared, wedge)

IWASAWA = "n = 3\nd phi3 = w(1,2)\n"


def test_parse_roundtrip():
    s = parse_structure_equations("n = 3\nd phi3 = 2*w(1,2) - (1/2+i)*w(1,-2)  # comment\n")
    again = parse_structure_equations(s.to_text())
    assert again.d == s.d


def test_terms_are_normalized():
    # w(2,1) = -w(1,2)
    s = parse_structure_equations("n = 3\nd phi3 = w(2,1) + w(1,2) + w(2,1)\n")
    (term,) = s.differential(3)
    assert (term.a, term.b, term.coeff) == (1, 2, -ONE)


def test_complex_coefficient():
    s = parse_structure_equations("n = 2\nd phi2 = i*w(1,-1)\n")
    assert s.differential(2)[0].coeff == I


@pytest.mark.parametrize("text,line,col", [
    ("d phi1 = w(1,2)\n", 1, 1),
    ("n = 2\nd phi2 = w(1,-1) w(1,2)\n", 2, 18),
    ("n = 2\nd phi2 = 3 w(1,-1)\n", 2, 12),
    ("n = 2\nhello\n", 2, 1),
    ("n = 2\nn = 3\n", 2, 1),
])
def test_syntax_errors_carry_positions(text, line, col):
    with pytest.raises(StructureSyntaxError) as info:
        parse_structure_equations(text)
    assert info.value.line == line
    assert info.value.column == col


def test_index_out_of_range():
    with pytest.raises(IndexRangeError):
        parse_structure_equations("n = 2\nd phi2 = w(1,3)\n")
    with pytest.raises(IndexRangeError):
        parse_structure_equations("n = 2\nd phi4 = w(1,2)\n")


def test_non_integrable_term():
    with pytest.raises(NonIntegrableError):
        parse_structure_equations("n = 3\nd phi3 = w(-1,-2)\n")


def test_d_squared_violation():
    # d phi2 = phi1∧phi3 and d phi3 = phi2∧phibar1 give d d phi2 = -phi1∧phi2∧phibar1
    s = StructureEquations.from_terms(3, {2: [(1, 1, 3)], 3: [(1, 2, -1)]})
    res = validate_d_squared(s)
    assert not res
    with pytest.raises(DSquaredError):
        build_double_complex(s)


def test_d_squared_on_iwasawa():
    s = parse_structure_equations(IWASAWA)
    assert validate_d_squared(s)
    assert is_nilpotent(s)
    assert not d_form(s, s.d_monomial((2,)))


def test_non_nilpotent_warns():
    # d phi1 = phi1∧phi2 is a solvable, non-nilpotent algebra
    s = StructureEquations.from_terms(2, {1: [(1, 1, 2)]})
    assert not is_nilpotent(s)
    with pytest.warns(NonNilpotentWarning):
        build_double_complex(s)


def test_wedge_is_graded_commutative():
    a = {(0,): ONE}
    b = {(1,): ONE}
    assert wedge(a, b) == {(0, 1): ONE}
    assert wedge(b, a) == {(0, 1): -ONE}
    assert wedge(a, a) == {}
    assert "phi1" in form_to_text(a, 2)


def test_complex_dimensions_are_binomial():
    from math import comb

    c = build_double_complex(parse_structure_equations(IWASAWA))
    for p in range(4):
        for q in range(4):
            assert c.dim(p, q) == comb(3, p) * comb(3, q)


def test_built_complex_is_a_double_complex():
    c = build_double_complex(parse_structure_equations("n = 3\nd phi3 = w(1,2) - w(1,-2)\n"))
    c.check()
    assert c.check_real_structure()
