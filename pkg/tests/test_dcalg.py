import pytest

from ccx.dcalg import (CatalogError, ClassOnlyEntryError, ComplexError, DoubleComplex, SupportError, ZigzagClass,
                       catalog_get, catalog_names, conjugate, direct_sum, dual, point_complex, tensor, zigzag_model)
from ccx.exactfield import Matrix
from ccx.invariants import full_report

CLASSES = [
    ZigzagClass("S", 0, 0, 0),
    ZigzagClass("S", 1, 0, 0),
    ZigzagClass("S", 1, 1, 1),
    ZigzagClass("S", 3, 2, 2),
    ZigzagClass("S", 2, 1, 0),
    ZigzagClass("S1", 1, 1, 0),
    ZigzagClass("S1", 2, 0, 1),
    ZigzagClass("S2", 1, 1, 0),
    ZigzagClass("S2", 2, 2, 0),
]


def square():
    one = Matrix.identity(1)
    dims = {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}
    return dims, one


@pytest.mark.parametrize("z", CLASSES, ids=str)
def test_label_roundtrip(z):
    assert ZigzagClass.parse(z.label()) == z


@pytest.mark.parametrize("z", CLASSES, ids=str)
def test_support_roundtrip(z):
    assert ZigzagClass.from_support(z.support) == z


@pytest.mark.parametrize("z", CLASSES, ids=str)
def test_parity_of_length(z):
    assert (z.length % 2 == 1) == z.is_odd


def test_supports_by_hand():
    assert ZigzagClass("S", 1, 0, 0).support == ((0, 1), (1, 0), (1, 1))
    assert ZigzagClass("S1", 1, 1, 0).support == ((1, 0), (2, 0))
    assert ZigzagClass("S2", 1, 0, 1).support == ((0, 1), (0, 2))


def test_negative_support_rejected():
    with pytest.raises(SupportError):
        ZigzagClass("S2", 2, 0, 0)
    with pytest.raises(ValueError):
        ZigzagClass("T", 0, 0, 0)


def test_symmetries_are_involutions():
    for z in CLASSES:
        n = max(z.max_coord(), 1) + 1
        assert z.sigma(n).sigma(n) == z
        assert z.tau().tau() == z


@pytest.mark.parametrize("z", CLASSES, ids=str)
def test_models_have_one_refined_class_when_odd(z):
    n = max(z.max_coord(), 1)
    rep = full_report(zigzag_model(z, n))
    assert sum(rep.betti) == (1 if z.is_odd else 0)
    if z.is_odd:
        assert rep.refined_betti == (((z.index, z.p, z.q), 1),)


def test_complex_checks_anticommutation():
    dims, one = square()
    ok = DoubleComplex(1, dims, {(0, 0): one, (0, 1): one}, {(0, 0): one, (1, 0): -one})
    assert ok.total_dim() == 4
    with pytest.raises(ComplexError):
        DoubleComplex(1, dims, {(0, 0): one, (0, 1): one}, {(0, 0): one, (1, 0): one})


def test_bad_dimensions():
    with pytest.raises(ComplexError):
        DoubleComplex(1, {(2, 0): 1})
    with pytest.raises(ComplexError):
        DoubleComplex(-1, {})


def test_tensor_dimensions_convolve():
    a = catalog_get("hopf").complex()
    b = catalog_get("cp1").complex()
    t = tensor(a, b)
    for (p, q), d in t.dims.items():
        want = sum(a.dim(p1, q1) * b.dim(p - p1, q - q1) for (p1, q1) in a.dims)
        assert d == want
    t.check()


def test_point_is_a_unit():
    a = catalog_get("threefold-N").complex()
    assert tensor(point_complex(), a).dims == a.dims


def test_dual_and_conjugate_dimensions():
    a = catalog_get("hopf").complex()
    n = a.n
    assert dual(a).dims == {(n - p, n - q): d for (p, q), d in a.dims.items()}
    assert conjugate(a).dims == {(q, p): d for (p, q), d in a.dims.items()}


def test_components_of_a_direct_sum():
    s = direct_sum(zigzag_model(ZigzagClass("S", 0, 0, 0), 1), zigzag_model(ZigzagClass("S1", 1, 0, 0), 1))
    comps = s.components
    assert sorted(c.total_dim() for c in comps) == [1, 2]


@pytest.mark.parametrize("name", ["point", "cp1", "cp2", "cpn:3", "torus:2", "iwasawa", "threefold-N", "xn:1", "hopf"])
def test_catalog_complexes_are_valid(name):
    entry = catalog_get(name)
    c = entry.complex()
    c.check()
    assert entry.provenance in ("PAPER", "TRIVIAL", "DERIVED")
    assert entry.grade == c.n


def test_catalog_class_only_entries():
    entry = catalog_get("ot:3")
    assert entry.grade == 3
    with pytest.raises(ClassOnlyEntryError):
        entry.complex()


@pytest.mark.parametrize("name", ["nope", "cpn:x", "xn:0", "ot:1"])
def test_catalog_errors(name):
    with pytest.raises(CatalogError):
        catalog_get(name)


def test_catalog_listing():
    assert "iwasawa" in catalog_names()
