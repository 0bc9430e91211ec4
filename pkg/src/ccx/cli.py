"""The ``ccx`` command line: analyze, product, ring and verify.

Exit codes: 0 when every check passes, 1 on a mathematical mismatch, 2 on an
input error (unknown entry, unparsable file, bad arguments).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Callable

from . import golden
from .dcalg import (CatalogError, ClassOnlyEntryError, DoubleComplex, ZigzagClass, catalog_get, conjugate, dual,
                    point_complex, tensor)
from .exactfield import rank as matrix_rank
from .invariants import full_report, kunneth_mismatches, refined_betti
from .liealg import StructureError, build_double_complex, parse_structure_equations
from .rings import (RingError, bimero_basis, check_identity_text, de_rham_relations,
                    diamond_to_poly, formal_basis_labels, formal_rank, frolicher_defect,
                    get_morphism, get_subring, hodge_relation, manifold_polynomials, membership, named_elements,
                    parse_named, poincare_polynomial, quartic_relation, quotient_by_c_check,
                    rb_series_rank, rbform_generators_check, rbform_mod_c_basis, refined_polynomial,
                    top_generator_coefficients, verify_bimero, verify_presentation)
from .zigzag import (SymOrbit, ZigzagSum, blowup_delta, c_class, decompose, is_in_Uform, quotient_basis_mod_C,
                     reconstruct_report, sym_basis_Uform, unit_class, uring_mul)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2
PROVENANCES = ("PAPER", "TRIVIAL", "DERIVED")


class InputError(Exception):
    """Bad user input; reported with exit code 2."""


# ----------------------------------------------------------------- inputs


def load_complex(source: str) -> DoubleComplex:
    """A catalog name or a path to a ``.ccx`` structure-equation file."""
    path = Path(source)
    if source.endswith(".ccx") or path.is_file():
        try:
            text = path.read_text()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from exc
        try:
            return build_double_complex(parse_structure_equations(text, path.stem))
        except StructureError as exc:
            raise InputError(f"{source}: {exc}") from exc
    try:
        return catalog_get(source).complex()
    except CatalogError as exc:
        raise InputError(str(exc)) from exc


def _is_class_only(source: str) -> bool:
    try:
        return catalog_get(source).kind == "class"
    except CatalogError:
        return False


@lru_cache(maxsize=None)
def catalog_complex(name: str) -> DoubleComplex:
    return catalog_get(name).complex()


@lru_cache(maxsize=None)
def catalog_report(name: str):
    return full_report(catalog_complex(name))


@lru_cache(maxsize=None)
def catalog_class(name: str) -> ZigzagSum:
    entry = catalog_get(name)
    if entry.kind == "class":
        return entry.zigzag_class()
    return decompose(catalog_complex(name), catalog_report(name))


# ----------------------------------------------------------------- analyze


def _report_document(rep, zigzags: ZigzagSum | None, polys) -> dict:
    doc = rep.to_dict()
    doc["polynomials"] = {
        "hodge": str(polys.h),
        "poincare": str(polys.dR),
        "refined_betti": str(polys.rb),
        "frolicher_defect": str(polys.fd),
    }
    doc["checks"] = [[label, ok, detail] for label, ok, detail in polys.checks]
    if zigzags is not None:
        doc["zigzags"] = zigzags.to_text().splitlines()
    return doc


def cmd_analyze(args) -> int:
    if _is_class_only(args.input):
        x = catalog_get(args.input).zigzag_class()
        rep = reconstruct_report(x)
        rep = replace(rep, name=args.input)
        zigzags = x if args.zigzags else None
    else:
        c = load_complex(args.input)
        rep = full_report(c, pages=args.pages)
        zigzags = decompose(c, rep) if args.zigzags else None
    polys = manifold_polynomials(rep, strict=False)
    out = [f"{rep.name or args.input}: complex dimension {rep.n}", f"betti {list(rep.betti)}"]
    for label, fieldname in (("dolbeault h^{p,q}", "hodge"), ("bott-chern", "bc"), ("aeppli", "aeppli")):
        out += [label, rep.diamond(fieldname)]
    out.append(f"frolicher defect {polys.fd}")
    out.append(f"column spectral sequence degenerates at E_{rep.r_max_col}")
    for label, ok, detail in polys.checks:
        out.append(f"{'pass' if ok else 'FAIL'} {label}: {detail}")
    if zigzags is not None:
        out += ["zigzags", zigzags.to_text()]
    print("\n".join(out))
    if args.json:
        Path(args.json).write_text(json.dumps(_report_document(rep, zigzags, polys), sort_keys=True, indent=1) + "\n")
    return EXIT_OK if polys.ok else EXIT_MISMATCH


# ----------------------------------------------------------------- product


def product_checks(a: DoubleComplex, b: DoubleComplex) -> list[tuple[str, bool, str]]:
    ra, rb_ = full_report(a), full_report(b)
    prod = tensor(a, b)
    rp = full_report(prod)
    bad = kunneth_mismatches(ra, rb_, rp)
    checks = [("bidegree convolution of the factor tables", not bad, ", ".join(bad) or "ok")]
    xa, xb = decompose(a, ra), decompose(b, rb_)
    xp = decompose(prod, rp)
    mul = uring_mul(xa, xb)
    checks.append(("zigzag class of the product is the ring product", xp == mul, "ok" if xp == mul else "differs"))
    same = reconstruct_report(mul, like=rp).tables() == rp.tables()
    checks.append(("all tables equal the reconstruction from the ring product", same, "ok" if same else "differs"))
    return checks


def cmd_product(args) -> int:
    a, b = load_complex(args.a), load_complex(args.b)
    checks = product_checks(a, b)
    rep = full_report(tensor(a, b))
    print(f"{args.a} x {args.b}: complex dimension {rep.n}, betti {list(rep.betti)}")
    print(rep.diamond())
    for label, ok, detail in checks:
        print(f"{'pass' if ok else 'FAIL'} {label}: {detail}")
    if args.json:
        Path(args.json).write_text(rep.to_json() + "\n")
    return EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_MISMATCH


# ----------------------------------------------------------------- ring


def cmd_ring(args) -> int:
    sub = args.ring_command
    if sub == "rank":
        print(formal_rank(args.ring, args.degree))
        return EXIT_OK
    if sub == "basis":
        print("\n".join(formal_basis_labels(args.ring, args.degree)))
        return EXIT_OK
    if sub == "member":
        spec = get_subring(args.ring)
        if spec.id == "HDRform":
            raise InputError("membership in HDRform takes a pair; use the Python API")
        target = parse_named(args.element, spec.ring)
        answer = membership(spec, target, args.degree)
        print(f"{target} {answer}")
        return EXIT_OK if answer else EXIT_MISMATCH
    if sub == "identity":
        ok = check_identity_text(args.check, args.ring or "HXY")
        print(f"{'pass' if ok else 'FAIL'} {args.check}")
        return EXIT_OK if ok else EXIT_MISMATCH
    if sub == "presentation":
        degrees = range(args.degree + 1) if args.up_to else [args.degree]
        reports = [verify_presentation(args.morphism, None, n, strict=False) for n in degrees]
        for rep in reports:
            print(rep.summary())
        return EXIT_OK if all(r.ok for r in reports) else EXIT_MISMATCH
    if sub == "bimero-basis":
        for f in bimero_basis(args.degree):
            print(f)
        return EXIT_OK
    if sub == "quotient-mod-C":
        n = args.degree
        if args.refined:
            for f in rbform_mod_c_basis(n):
                print(f)
            listed, expected, unimodular = quotient_by_c_check(n)
            print(f"{listed} representatives; rank difference {expected}; unimodular {unimodular}")
            return EXIT_OK if listed == expected and unimodular else EXIT_MISMATCH
        kept = quotient_basis_mod_C(n)
        for orbit in kept:
            print(orbit.label())
        excluded = [o for o in sym_basis_Uform(n) if o not in kept]
        print(f"{len(kept)} basis orbits; {len(excluded)} exclusions")
        for orbit in excluded:
            print(f"excluded {orbit.label()}")
        return EXIT_OK
    raise InputError(f"unknown ring subcommand {sub!r}")


# ----------------------------------------------------------------- verify suites


@dataclass(frozen=True)
class Check:
    """One exact comparison: ``operation(*args) == expected``."""

    name: str
    provenance: str
    expected: object
    operation: Callable
    args: tuple = ()
    note: str = ""

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")


@dataclass(frozen=True)
class VerifySuite:
    id: str
    description: str
    checks: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    provenance: str
    expected: str
    observed: str
    passed: bool
    tolerance: str = "exact"


def run_check(suite_id: str, check: Check) -> CheckResult:
    try:
        observed = check.operation(*check.args)
        passed = observed == check.expected
        shown = repr(observed)
    except Exception as exc:  # a crashing check is a failed check, with the reason
        passed, shown = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(suite_id, check.name, check.provenance, repr(check.expected), shown, passed)


def _run_indexed(job):
    suite_id, index = job
    return run_check(suite_id, SUITES[suite_id]().checks[index])


def run_suites(suite_ids, jobs: int = 1) -> list[CheckResult]:
    work = [(sid, i) for sid in suite_ids for i in range(len(SUITES[sid]().checks))]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_indexed, work))
    else:
        results = [_run_indexed(job) for job in work]
    order = {sid: i for i, sid in enumerate(suite_ids)}
    return sorted(results, key=lambda r: (order[r.suite], r.name))


# individual operations (module level so worker processes can pickle them)


def _betti(name):
    return tuple(catalog_report(name).betti)


def _hodge_totals(name):
    return catalog_report(name).hodge_totals()


def _hodge_number(name, p, q):
    return catalog_report(name).h(p, q)


def _bc_total_equals_dolbeault_total(name):
    rep = catalog_report(name)
    return sum(v for _, v in rep.bc) == sum(v for _, v in rep.hodge)


def _diamond_matches(name, rows):
    rep = catalog_report(name)
    return dict(rep.hodge) == {(p, q): c for (p, q, _), c in diamond_to_poly(rows).terms.items()}


def _fd_equals(name, text):
    polys = manifold_polynomials(catalog_report(name))
    return polys.fd == parse_named(text, "DR")


def _fd_of_diamond(rows, betti, text):
    return frolicher_defect(diamond_to_poly(rows), poincare_polynomial(len(betti) // 2, betti)) == parse_named(text, "DR")


def _even_zigzag_count(name):
    return sum(m for z, m in catalog_class(name).items() if not z.is_odd)


def _even_orbit_mults(name):
    return {o.rep.label(): m for o, m in catalog_class(name).even_part().orbit_coefficients().items()}


def _reconstructs(name):
    rep = catalog_report(name)
    return reconstruct_report(catalog_class(name), like=rep).tables() == rep.tables()


def _refined_betti_number(name, k, p, q):
    return catalog_report(name).b(k, p, q)


def _orbit_sum(n, labels):
    total = ZigzagSum(n, {})
    for label in labels:
        total = total + SymOrbit(ZigzagClass.parse(label), n).as_sum()
    return total


def _class_mod_dots_equals(name, labels):
    x = catalog_class(name)
    return x.without_dots() == _orbit_sum(x.n, labels)


def _family_top_refined(m):
    c = catalog_complex(f"xn:{m}")
    n = c.n
    return refined_betti(c).get((n - 1, n - 1, n - 1), 0)


def _family_del_exact(m):
    return matrix_rank(catalog_complex(f"xn:{m}").del_(2 * m - 1, 0))


def _multiplicity(name, label):
    return catalog_class(name).mult(ZigzagClass.parse(label))


def _family_top_generators(m):
    c = catalog_complex(f"xn:{m}")
    coeffs = top_generator_coefficients(refined_polynomial(c.n, refined_betti(c)), c.n)
    return coeffs[f"M{c.n}"], coeffs[f"L{c.n}"]


def _presentation_ok(morphism, n):
    return verify_presentation(morphism, None, n, strict=False).ok


def _relation_images_vanish(morphism):
    rels = {"phi": [hodge_relation()], "psi": de_rham_relations(), "Phi": [quartic_relation()]}[morphism]
    m = get_morphism(morphism)
    return all(not m(r) for r in rels)


def _formal_rank(spec, n):
    return formal_rank(spec, n)


def _rb_formula(n):
    return rb_series_rank(n)


def _identity(text, ring):
    return check_identity_text(text, ring)


def _element_diamond(expr, rows):
    return parse_named(expr, "HXY") == diamond_to_poly(rows)


def _realization(expr, parts):
    total = None
    for c, rows in parts:
        term = diamond_to_poly(rows) * c
        total = term if total is None else total + term
    return parse_named(expr, "HXY") == total


def _rb_of(combination):
    total = None
    for c, names in combination:
        reports = [catalog_report(nm) for nm in names]
        value = refined_polynomial(reports[0].n, dict(reports[0].refined_betti))
        for r in reports[1:]:
            value = value * refined_polynomial(r.n, dict(r.refined_betti))
        value = value * c
        total = value if total is None else total + value
    return total


def _rb_realizes(generator, combination):
    return _rb_of(combination) == named_elements("RB")[generator]


def _refused_by_rbform(generator):
    answer = membership("RBform", named_elements("RB")[generator])
    return (answer.member, answer.kind if not answer else "")


def _rbform_generators_ok(n_max):
    return rbform_generators_check(n_max).ok


def _ot_closed_form(n):
    expected = ZigzagSum(n, {})
    for k in range(n):
        expected = expected + SymOrbit(ZigzagClass("S", k, 0, 0), n).as_sum().scale(comb(n - 1, k))
    return catalog_class(f"ot:{n}") == expected


def _ot_m_component(n):
    rep = reconstruct_report(catalog_class(f"ot:{n}"))
    return top_generator_coefficients(manifold_polynomials(rep).rb, n)[f"M{n}"]


def _ot_formal(n):
    return is_in_Uform(catalog_class(f"ot:{n}"))[0]


def _bimero_size(n):
    return len(bimero_basis(n))


def _bimero_ok(n):
    return verify_bimero(n).ok


def _quotient_matches_rank(n):
    """Combinatorial enumeration against rank(Sym(n)) − rank(C·Sym(n−2))."""
    from .zigzag import _rank_of_c_image

    kept = quotient_basis_mod_C(n, cross_check=False)
    return len(kept) == len(sym_basis_Uform(n)) - _rank_of_c_image(n)[0]


def _quotient_exclusions(n, labels):
    kept = quotient_basis_mod_C(n)
    excluded = {o for o in sym_basis_Uform(n) if o not in kept}
    return excluded == {SymOrbit(ZigzagClass.parse(label), n) for label in labels}


def _blowup_point_in_surface():
    return blowup_delta(unit_class(), 2, 2) == c_class()


def _rbform_mod_c(n):
    listed, expected, unimodular = quotient_by_c_check(n)
    return listed == expected and unimodular


def _gate(name):
    decompose(catalog_complex(name), catalog_report(name), gate=True)
    return True


def _formal_class(name):
    return is_in_Uform(catalog_class(name))[0]


def _product_reports(a, b):
    return [ok for _, ok, _ in product_checks(catalog_complex(a), catalog_complex(b))]


def _bc_convolves(a, b):
    from .invariants import _convolve

    ra, rb_ = catalog_report(a), catalog_report(b)
    rp = full_report(tensor(catalog_complex(a), catalog_complex(b)))
    return rp.bc == _convolve(ra.bc, rb_.bc)


def _formal_checks(name):
    rep = catalog_report(name) if catalog_get(name).kind != "class" else reconstruct_report(catalog_class(name))
    polys = manifold_polynomials(rep, strict=False)
    return polys.failures()


def _dual_is_sigma(name):
    return decompose(dual(catalog_complex(name))) == catalog_class(name).sigma()


def _conjugate_is_tau(name):
    return decompose(conjugate(catalog_complex(name))) == catalog_class(name).tau()


def _engine_checks(name):
    full_report(catalog_complex(name), check=True)
    return True


def _point_product_neutral(name):
    c = catalog_complex(name)
    return full_report(tensor(point_complex(), c)).tables() == catalog_report(name).tables()


def _cp1_squared_minus_cp2():
    sq = decompose(tensor(catalog_complex("cp1"), catalog_complex("cp1")))
    return sq - catalog_class("cp2") == c_class()


def _hopf_gate():
    """The Hopf model is admitted only if it realizes the L generator."""
    return _rb_realizes("L", ((1, ("hopf",)), (-2, ("cp2",)), (1, ("cp1", "cp1"))))


COMPLEX_ENTRIES = ("point", "cp1", "cp2", "cpn:3", "torus:1", "torus:2", "torus:3", "iwasawa", "threefold-N",
                   "xn:1", "xn:2", "hopf")
CLASS_ENTRIES = ("ot:2", "ot:3", "ot:4", "ot:5")
KUNNETH_POOL = ("point", "cp1", "cp2", "torus:1", "torus:2", "hopf", "xn:1", "iwasawa", "threefold-N")
KUNNETH_SEED = 20240611


def kunneth_pairs(count: int = 10, seed: int = KUNNETH_SEED) -> list[tuple[str, str]]:
    """A fixed pseudo-random sample of catalog pairs of total dimension at most four."""
    grade = {nm: catalog_get(nm).grade for nm in KUNNETH_POOL}
    pairs = [(a, b) for i, a in enumerate(KUNNETH_POOL) for b in KUNNETH_POOL[i:] if grade[a] + grade[b] <= 4]
    return random.Random(seed).sample(pairs, count)


def _suite_iwasawa():
    g = golden
    return VerifySuite("iwasawa", "Betti, Hodge and Frölicher defect numbers of the Iwasawa manifold", (
        Check("betti numbers", "PAPER", g.IWASAWA_BETTI.value, _betti, ("iwasawa",)),
        Check("hodge totals", "PAPER", g.IWASAWA_HODGE_TOTALS.value, _hodge_totals, ("iwasawa",)),
        Check("h^{1,0}", "PAPER", g.IWASAWA_H10.value, _hodge_number, ("iwasawa", 1, 0)),
        Check("h^{0,1}", "PAPER", g.IWASAWA_H01.value, _hodge_number, ("iwasawa", 0, 1)),
        Check("total bott-chern equals total dolbeault", "PAPER", True, _bc_total_equals_dolbeault_total,
              ("iwasawa",)),
        Check("frolicher defect", "PAPER", True, _fd_equals, ("iwasawa", g.IWASAWA_FD.value)),
        Check("hodge diamond", "PAPER", True, _diamond_matches, ("iwasawa", g.DIAMOND_I_I.value)),
        Check("frolicher defect of the class ii deformation", "PAPER", True, _fd_of_diamond,
              (g.DIAMOND_I_II.value, g.IWASAWA_BETTI.value, "e")),
    ))


def _suite_census():
    g = golden
    return VerifySuite("census", "even zigzags of the Iwasawa manifold", (
        Check("number of length-two zigzags", "PAPER", g.IWASAWA_EVEN_ZIGZAGS.value, _even_zigzag_count, ("iwasawa",)),
        Check("orbit multiplicities of the even part", "PAPER", g.IWASAWA_ORBIT_MULTS.value, _even_orbit_mults,
              ("iwasawa",)),
        Check("reconstruction from the census", "DERIVED", True, _reconstructs, ("iwasawa",)),
    ))


def _suite_threefold():
    return VerifySuite("threefold", "the nilmanifold threefold with a pure (1,1)-class in degree three", (
        Check("b_3^{1,1}", "PAPER", 1, _refined_betti_number, ("threefold-N", 3, 1, 1)),
        Check("class modulo dots", "PAPER", True, _class_mod_dots_equals,
              ("threefold-N", ("S[2; 1,0]", "S[2; 2,1]", "S[3; 1,1]"))),
    ))


def _suite_family():
    checks = []
    for m in (1, 2, 3):
        checks.append(Check(f"m={m}: b_{{n-1}}^{{n-1,n-1}}", "PAPER", 1, _family_top_refined, (m,)))
        checks.append(Check(f"m={m}: dim of the del-image in bidegree ({2 * m},0)", "PAPER", 1,
                            _family_del_exact, (m,)))
    checks.append(Check("m=2: multiplicity of S[4; 4,4]", "PAPER", 1, _multiplicity, ("xn:2", "S[4; 4,4]")))
    for m in (1, 2):
        checks.append(Check(f"m={m}: rb realizes M_n modulo lower generators", "DERIVED", (1, 0),
                            _family_top_generators, (m,)))
    return VerifySuite("family", "the nilmanifold family X_n realizing the M_n generators", tuple(checks))


def _suite_presentations():
    checks = [Check(f"{m}: relations vanish", "PAPER", True, _relation_images_vanish, (m,)) for m in ("phi", "psi", "Phi")]
    for m in ("phi", "psi", "Phi"):
        for n in range(7):
            checks.append(Check(f"{m}: degree {n} kernel and image certified", "PAPER", True, _presentation_ok, (m, n)))
    return VerifySuite("presentations", "ring presentations certified degreewise over the integers", tuple(checks))


def _suite_ranks():
    checks = [Check(f"RBprime rank in degree {n}", "PAPER", rb_series_rank(n), _formal_rank, ("RBprime", n))
              for n in range(11)]
    checks.append(Check("RBprime rank in degree 3", "PAPER", golden.RBPRIME_RANK_3.value, _formal_rank, ("RBprime", 3)))
    checks += [Check(f"HDRform rank in degree {n}", "DERIVED", r, _formal_rank, ("HDRform", n))
               for n, r in enumerate(golden.HDRFORM_RANKS.value)]
    return VerifySuite("ranks", "ranks of the formal rings", tuple(checks))


def _suite_identities():
    checks = [Check(f"identity {text}", prov, True, _identity, (text, ring), note)
              for text, ring, prov, note in golden.RING_IDENTITIES]
    for name, (expr, diamond) in golden.DISPLAYED_ELEMENTS.items():
        checks.append(Check(f"diamond of {name}", diamond.provenance, True, _element_diamond,
                            (expr, diamond.value), diamond.note))
    for expr, parts, prov in golden.REALIZATIONS:
        checks.append(Check(f"realization of {expr}", prov, True, _realization,
                            (expr, tuple((c, d.value) for c, d in parts))))
    return VerifySuite("identities", "identities among named Hodge and de Rham polynomials", tuple(checks))


def _suite_generators():
    return VerifySuite("generators", "geometric realizations of the refined Betti generators", (
        Check("A = rb(CP1)", "PAPER", True, _rb_realizes, ("A", ((1, ("cp1",)),))),
        Check("B = rb(E - CP1)", "PAPER", True, _rb_realizes, ("B", ((1, ("torus:1",)), (-1, ("cp1",))))),
        Check("C = rb(CP1 x CP1 - CP2)", "PAPER", True, _rb_realizes,
              ("C", ((1, ("cp1", "cp1")), (-1, ("cp2",))))),
        Check("L = rb(H - 2 CP2 + CP1 x CP1)", "PAPER", True, _hopf_gate),
        Check("M is refused by RBform", "PAPER", (False, "conditions"), _refused_by_rbform, ("M",)),
        Check("generators of RBform up to degree 6", "DERIVED", True, _rbform_generators_ok, (6,)),
    ))


def _suite_ot():
    checks = []
    for n in (3, 4, 5):
        checks.append(Check(f"n={n}: closed form", "PAPER", True, _ot_closed_form, (n,)))
        checks.append(Check(f"n={n}: M_n coefficient", "PAPER", 0, _ot_m_component, (n,)))
        checks.append(Check(f"n={n}: formal class", "DERIVED", True, _ot_formal, (n,)))
    return VerifySuite("ot", "OT manifolds (class only)", tuple(checks))


def _suite_bimero():
    checks = []
    for n in range(1, 7):
        checks.append(Check(f"bimero basis size in degree {n}", "PAPER", 2 * n, _bimero_size, (n,)))
        checks.append(Check(f"bimero basis certified in degree {n}", "PAPER", True, _bimero_ok, (n,)))
    for n in range(1, 6):
        checks.append(Check(f"quotient mod C in degree {n} against the C-image rank", "PAPER", True,
                            _quotient_matches_rank, (n,)))
    checks.append(Check("degree 3 exclusions", "PAPER", True, _quotient_exclusions,
                        (3, golden.QUOTIENT_MOD_C_EXCLUSIONS_3.value)))
    checks.append(Check("blow-up of a point in a surface adds C", "PAPER", True, _blowup_point_in_surface))
    for n in range(1, 7):
        checks.append(Check(f"refined basis mod C in degree {n}", "DERIVED", True, _rbform_mod_c, (n,)))
    return VerifySuite("bimero", "bimeromorphic invariants and quotients by C", tuple(checks))


def _suite_reconstruction():
    checks = [Check(f"gate on {nm}", "DERIVED", True, _gate, (nm,)) for nm in COMPLEX_ENTRIES]
    checks += [Check(f"{nm} lies in the formal ring", "DERIVED", True, _formal_class, (nm,))
               for nm in COMPLEX_ENTRIES + CLASS_ENTRIES]
    return VerifySuite("reconstruction", "zigzag reconstruction over the catalog", tuple(checks))


def _suite_kunneth():
    checks = [Check(f"{a} x {b}", "DERIVED", [True, True, True], _product_reports, (a, b)) for a, b in kunneth_pairs()]
    checks.append(Check("bott-chern of hopf x hopf is not a convolution", "DERIVED", False, _bc_convolves,
                        ("hopf", "hopf")))
    checks.append(Check("cp1 x cp1 - cp2 = C", "PAPER", True, _cp1_squared_minus_cp2))
    checks += [Check(f"point x {nm} = {nm}", "TRIVIAL", True, _point_product_neutral, (nm,))
               for nm in ("cp1", "hopf", "iwasawa")]
    return VerifySuite("kunneth", "products of catalog entries", tuple(checks))


def _suite_symmetries():
    checks = [Check(f"formal conditions on {nm}", "DERIVED", [], _formal_checks, (nm,))
              for nm in COMPLEX_ENTRIES + CLASS_ENTRIES]
    checks += [Check(f"Serre dual of {nm}", "DERIVED", True, _dual_is_sigma, (nm,)) for nm in COMPLEX_ENTRIES]
    checks += [Check(f"conjugate of {nm}", "DERIVED", True, _conjugate_is_tau, (nm,)) for nm in COMPLEX_ENTRIES]
    return VerifySuite("symmetries", "Serre and conjugation symmetries and the page relations", tuple(checks))


def _suite_pages():
    return VerifySuite("pages", "page recursion and convergence of both spectral sequences", tuple(
        Check(f"engine cross-checks on {nm}", "DERIVED", True, _engine_checks, (nm,)) for nm in COMPLEX_ENTRIES
    ))


SUITES: dict[str, Callable[[], VerifySuite]] = {k: lru_cache(maxsize=None)(v) for k, v in {
    "iwasawa": _suite_iwasawa,
    "census": _suite_census,
    "threefold": _suite_threefold,
    "family": _suite_family,
    "presentations": _suite_presentations,
    "ranks": _suite_ranks,
    "identities": _suite_identities,
    "generators": _suite_generators,
    "ot": _suite_ot,
    "bimero": _suite_bimero,
    "reconstruction": _suite_reconstruction,
    "kunneth": _suite_kunneth,
    "symmetries": _suite_symmetries,
    "pages": _suite_pages,
}.items()}


def cmd_verify(args) -> int:
    if args.list:
        for sid, make in SUITES.items():
            suite = make()
            print(f"{sid:15s} {len(suite.checks):3d} checks  {suite.description}")
        return EXIT_OK
    if args.suite == "all":
        ids = list(SUITES)
    elif args.suite in SUITES:
        ids = [args.suite]
    else:
        raise InputError(f"unknown suite {args.suite!r}; known: all, {', '.join(SUITES)}")
    results = run_suites(ids, args.jobs)
    for r in results:
        line = f"{'PASS' if r.passed else 'FAIL'}  {r.suite}/{r.name}  [{r.provenance}]"
        if not r.passed:
            line += f"  expected {r.expected}, observed {r.observed}"
        print(line)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    if args.json:
        doc = {"schema": "ccx.verify/1", "results": [r.__dict__ for r in results]}
        Path(args.json).write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    return EXIT_OK if not failed else EXIT_MISMATCH


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ccx", description="Cohomological invariants of double complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="all invariants of one complex")
    pa.add_argument("input", help="catalog name or .ccx structure-equation file")
    pa.add_argument("--zigzags", action="store_true", help="also decompose into zigzags")
    pa.add_argument("--pages", type=int, default=None, help="cap the spectral sequences at this page")
    pa.add_argument("--json", metavar="PATH", help="write the machine-readable report here")
    pa.set_defaults(func=cmd_analyze)

    pp = sub.add_parser("product", help="analyze a product and cross-check it against its factors")
    pp.add_argument("a")
    pp.add_argument("b")
    pp.add_argument("--json", metavar="PATH")
    pp.set_defaults(func=cmd_product)

    pr = sub.add_parser("ring", help="graded ring computations")
    rsub = pr.add_subparsers(dest="ring_command", required=True)
    for name in ("rank", "basis"):
        q = rsub.add_parser(name)
        q.add_argument("ring", help="Hform, DRform, HDRform, RBprime or RBform")
        q.add_argument("--degree", type=int, required=True)
    q = rsub.add_parser("member")
    q.add_argument("ring")
    q.add_argument("element", help="polynomial in the ring variables or named elements")
    q.add_argument("--degree", type=int, default=None)
    q = rsub.add_parser("identity")
    q.add_argument("--check", required=True, metavar="LHS=RHS")
    q.add_argument("--ring", default=None, help="HXY (default) or DR")
    q = rsub.add_parser("presentation")
    q.add_argument("morphism", choices=("phi", "psi", "Phi"))
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--up-to", action="store_true", help="all degrees from 0 to --degree")
    q = rsub.add_parser("bimero-basis")
    q.add_argument("--degree", type=int, required=True)
    q = rsub.add_parser("quotient-mod-C")
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--refined", action="store_true", help="refined Betti version instead of zigzag orbits")
    pr.set_defaults(func=cmd_ring)

    pv = sub.add_parser("verify", help="run reproduction suites")
    pv.add_argument("suite", nargs="?", default="all")
    pv.add_argument("--list", action="store_true")
    pv.add_argument("--jobs", type=int, default=1, help="worker processes")
    pv.add_argument("--json", metavar="PATH")
    pv.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, CatalogError, ClassOnlyEntryError, RingError, StructureError) as exc:
        print(f"ccx: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, SyntaxError) as exc:
        print(f"ccx: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
