"""Graded integer polynomial rings, their formal subrings, and degreewise checks.

Polynomials live in one of a few fixed rings:

=======  =====================  ==========================================
ring     variables              degree
=======  =====================  ==========================================
HXY      x, y, z                exponent of z
DR       t, z                   exponent of z
RB       x, y, h, z             exponent of z
GEN4     A, B, C, D             |A| = |B| = 1, |C| = |D| = 2
GEN5     A, B, C, L, M          |A| = |B| = |M| = 1, |C| = |L| = 2
Z        z                      exponent of z (targets of numeric genera)
HX       x, z                   exponent of z (target of the chi_y genus)
=======  =====================  ==========================================

All linear algebra here is over the integers: lattices are diagonalized by
unimodular row and column operations, so every membership answer comes
with either an explicit integer combination or a witness functional that
proves no such combination exists.
"""

from __future__ import annotations

import ast
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

DEFAULT_DEGREE_BOUND = int(os.environ.get("CCX_DEGREE_BOUND", "10"))


class RingError(ValueError):
    """Bad ring id, wrong source ring, or a malformed polynomial literal."""


class DegreeBoundError(ValueError):
    """A degreewise verification was asked for beyond the configured bound."""


class PresentationMismatchError(AssertionError):
    """Rank counting disagrees with a claimed presentation."""


class FormalViolationError(AssertionError):
    """Invariants of a geometric complex violate a universal relation."""


# ---------------------------------------------------------------- rings


@dataclass(frozen=True)
class Ring:
    id: str
    variables: tuple[str, ...]
    weights: tuple[int, ...]
    description: str

    def degree_of(self, mono: tuple[int, ...]) -> int:
        return sum(w * e for w, e in zip(self.weights, mono))

    def index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise RingError(f"{var!r} is not a variable of {self.id}") from None


RINGS = {
    r.id: r
    for r in (
        Ring("HXY", ("x", "y", "z"), (0, 0, 1), "ℤ[x,y,z], Hodge polynomials"),
        Ring("DR", ("t", "z"), (0, 1), "ℤ[t,z], Poincaré polynomials"),
        Ring("RB", ("x", "y", "h", "z"), (0, 0, 0, 1), "ℤ[x,y,h,z], refined Betti polynomials"),
        Ring("GEN4", ("A", "B", "C", "D"), (1, 1, 2, 2), "ℤ[A,B,C,D]"),
        Ring("GEN5", ("A", "B", "C", "L", "M"), (1, 1, 2, 2, 1), "ℤ[A,B,C,L,M]"),
        Ring("Z", ("z",), (1,), "ℤ[z]"),
        Ring("HX", ("x", "z"), (0, 1), "ℤ[x,z]"),
    )
}

_RING_ALIASES = {"H": "HXY", "HODGE": "HXY", "RBPRIME": "RB", "RBFORM": "RB"}


def get_ring(ring: "Ring | str") -> Ring:
    if isinstance(ring, Ring):
        return ring
    key = ring.upper()
    key = _RING_ALIASES.get(key, key)
    if key not in RINGS:
        raise RingError(f"unknown ring {ring!r}; known: {', '.join(RINGS)}")
    return RINGS[key]


def _normalize_coefficient(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class GradedPoly:
    """A polynomial with integer (or, in rational mode, fractional) coefficients.

    Terms map exponent tuples, ordered as the ring's variables, to nonzero
    coefficients.  Monomials print in graded lexicographic order:
    higher degree first, then higher total exponent, then lexicographically
    with the ring's variable order (x > y > t > h > z, A > B > C > D > L > M).
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: "Ring | str", terms: Mapping[tuple[int, ...], object] | None = None):
        self.ring = get_ring(ring)
        width = len(self.ring.variables)
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != width or any(e < 0 for e in mono):
                raise RingError(f"bad exponent vector {mono} for {self.ring.id}")
            if c:
                clean[mono] = _normalize_coefficient(clean.get(mono, 0) + c)
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean
        self._hash = None

    # -- constructors
    @classmethod
    def zero(cls, ring) -> "GradedPoly":
        return cls(ring)

    @classmethod
    def constant(cls, ring, c: int = 1) -> "GradedPoly":
        ring = get_ring(ring)
        return cls(ring, {(0,) * len(ring.variables): c})

    @classmethod
    def var(cls, ring, name: str) -> "GradedPoly":
        ring = get_ring(ring)
        mono = [0] * len(ring.variables)
        mono[ring.index(name)] = 1
        return cls(ring, {tuple(mono): 1})

    @classmethod
    def monomial(cls, ring, coefficient: int = 1, **exponents: int) -> "GradedPoly":
        ring = get_ring(ring)
        mono = [0] * len(ring.variables)
        for name, e in exponents.items():
            mono[ring.index(name)] = e
        return cls(ring, {tuple(mono): coefficient})

    # -- inspection
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        ring = self.ring
        return sorted(self._terms.items(), key=lambda kv: (ring.degree_of(kv[0]), sum(kv[0]), kv[0]), reverse=True)

    def coefficient(self, mono: "tuple[int, ...] | Mapping[str, int]"):
        if isinstance(mono, Mapping):
            vec = [0] * len(self.ring.variables)
            for name, e in mono.items():
                vec[self.ring.index(name)] = e
            mono = tuple(vec)
        return self._terms.get(tuple(mono), 0)

    def degrees(self) -> list[int]:
        return sorted({self.ring.degree_of(m) for m in self._terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """The degree of a homogeneous element (``None`` for zero)."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous element with components in degrees {degs}")
        return degs[0]

    def component(self, n: int) -> "GradedPoly":
        return GradedPoly(self.ring, {m: c for m, c in self._terms.items() if self.ring.degree_of(m) == n})

    def components(self) -> dict[int, "GradedPoly"]:
        return {n: self.component(n) for n in self.degrees()}

    def truncate(self, max_degree: int) -> "GradedPoly":
        return GradedPoly(self.ring, {m: c for m, c in self._terms.items() if self.ring.degree_of(m) <= max_degree})

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    # -- arithmetic
    def _coerce(self, other) -> "GradedPoly":
        if isinstance(other, GradedPoly):
            if other.ring != self.ring:
                raise RingError(f"cannot combine elements of {self.ring.id} and {other.ring.id}")
            return other
        if isinstance(other, (int, Fraction)):
            return GradedPoly.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return GradedPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GradedPoly(self.ring, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return GradedPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = GradedPoly.constant(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == GradedPoly.constant(self.ring, other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.id, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"GradedPoly({self.ring.id}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(self.ring.variables, mono) if e]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*()^]))")


def _tokenize(text: str, known: set[str]) -> list[str]:
    text = text.replace("−", "-").replace("·", "*")
    pos = 0
    out: list[str] = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise RingError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        number, name, op = m.groups()
        if number is not None:
            out.append(number)
        elif name is not None:
            if name in known:
                out.append(name)
            elif all(ch in known for ch in name):
                out.extend(name)  # juxtaposed single-letter factors such as "ABS"
            else:
                raise RingError(f"unknown symbol {name!r}")
        else:
            out.append("**" if op == "^" else op)
    spaced: list[str] = []
    for tok in out:
        if spaced:
            prev = spaced[-1]
            ends = prev == ")" or prev[0].isalnum() or prev[0] == "_"
            starts = tok == "(" or tok[0].isalnum() or tok[0] == "_"
            if ends and starts:
                spaced.append("*")
        spaced.append(tok)
    return spaced


def parse_poly(text: str, ring: "Ring | str", names: Mapping[str, GradedPoly] | None = None) -> GradedPoly:
    """Parse ``3*x^2*y*z^4 - h*z^2`` style literals.

    ``names`` adds named elements (such as ``d`` or ``T``) to the ring's
    variables.  Adjacent factors may be juxtaposed (``2Cd``, ``ABS``).
    """
    ring = get_ring(ring)
    namespace = {v: GradedPoly.var(ring, v) for v in ring.variables}
    namespace.update(names or {})
    tokens = _tokenize(text, set(namespace))
    if not tokens:
        raise RingError("empty polynomial literal")
    try:
        tree = ast.parse(" ".join(tokens), mode="eval")
    except SyntaxError as exc:
        raise RingError(f"malformed polynomial literal {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return GradedPoly.constant(ring, node.value)
        if isinstance(node, ast.Name):
            return namespace[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = ev(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise RingError("exponents must be integer literals")
                return ev(node.left) ** node.right.value
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
        raise RingError(f"unsupported syntax in {text!r}")

    result = ev(tree)
    if result.ring != ring:
        raise RingError(f"literal {text!r} does not live in {ring.id}")
    return result


# ---------------------------------------------------------------- morphisms


@dataclass(frozen=True)
class Morphism:
    """A ring map given by the images of the source variables."""

    name: str
    source: str
    target: str
    images: tuple[tuple[str, str], ...]
    description: str = ""

    @property
    def image_polys(self) -> dict[str, GradedPoly]:
        return _image_polys(self)

    def __call__(self, f: GradedPoly) -> GradedPoly:
        if f.ring.id != self.source:
            raise RingError(f"{self.name} expects an element of {self.source}, got {f.ring.id}")
        imgs = [self.image_polys[v] for v in f.ring.variables]
        powers: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = imgs[i] ** e
            return powers[key]

        out = GradedPoly.zero(self.target)
        for mono, c in f.terms.items():
            term = GradedPoly.constant(self.target, c)
            for i, e in enumerate(mono):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out


@lru_cache(maxsize=None)
def _image_polys(m: Morphism) -> dict[str, GradedPoly]:
    return {v: parse_poly(text, m.target) for v, text in m.images}


_SUBSTITUTIONS = {
    "phi": Morphism("phi", "GEN4", "HXY",
                    (("A", "(1+x*y)*z"), ("B", "(x+y)*z"), ("C", "x*y*z^2"), ("D", "(x+x*y^2)*z^2")),
                    "generators to formal Hodge polynomials"),
    "psi": Morphism("psi", "GEN4", "DR",
                    (("A", "(1+t^2)*z"), ("B", "2*t*z"), ("C", "t^2*z^2"), ("D", "(t+t^3)*z^2")),
                    "generators to formal Poincaré polynomials"),
    "Phi": Morphism("Phi", "GEN5", "RB",
                    (("A", "(1+x*y*h^2)*z"), ("B", "(x*h+y*h)*z"), ("C", "x*y*h^2*z^2"),
                     ("L", "(h+x^2*y^2*h^3)*z^2"), ("M", "(x*y*h+h)*z")),
                    "generators to formal refined Betti polynomials"),
    "s": Morphism("s", "HXY", "DR", (("x", "t"), ("y", "t"), ("z", "z")), "x, y ↦ t"),
    "sigma": Morphism("sigma", "HXY", "Z", (("x", "1"), ("y", "-1"), ("z", "z")), "signature: x ↦ 1, y ↦ −1"),
    "chi_star": Morphism("chi_star", "HXY", "HX", (("x", "x"), ("y", "-1"), ("z", "z")), "χ_y genus: y ↦ −1"),
    "h00": Morphism("h00", "HXY", "Z", (("x", "0"), ("y", "0"), ("z", "z")), "x, y ↦ 0"),
    "b0": Morphism("b0", "DR", "Z", (("t", "0"), ("z", "z")), "t ↦ 0"),
    "rb_to_dr": Morphism("rb_to_dr", "RB", "DR", (("x", "1"), ("y", "1"), ("h", "t"), ("z", "z")),
                         "forget the refinement: x, y ↦ 1, h ↦ t"),
}
_CHI = {
    "HXY": Morphism("chi", "HXY", "Z", (("x", "-1"), ("y", "-1"), ("z", "z")), "Euler characteristic"),
    "DR": Morphism("chi", "DR", "Z", (("t", "-1"), ("z", "z")), "Euler characteristic"),
}

MORPHISM_NAMES = ("phi", "psi", "Phi", "s", "p_mod_xy", "chi", "sigma", "chi_star", "h00", "b0", "FD")


def get_morphism(name: str) -> Morphism:
    if name in _SUBSTITUTIONS:
        return _SUBSTITUTIONS[name]
    raise RingError(f"{name!r} is not a substitution morphism")


def p_mod_xy(f: GradedPoly) -> GradedPoly:
    """Normal form in ℤ[x,y,z]/(xy): drop every monomial divisible by xy."""
    if f.ring.id != "HXY":
        raise RingError(f"p_mod_xy expects an element of HXY, got {f.ring.id}")
    return GradedPoly(f.ring, {m: c for m, c in f.terms.items() if not (m[0] and m[1])})


def frolicher_defect(a: GradedPoly, b: GradedPoly) -> GradedPoly:
    """FD(a, b) = s(a) − b for a Hodge polynomial a and a Poincaré polynomial b."""
    if a.ring.id != "HXY" or b.ring.id != "DR":
        raise RingError("FD expects a pair (Hodge polynomial in HXY, Poincaré polynomial in DR)")
    return _SUBSTITUTIONS["s"](a) - b


def apply_morphism(name: str, x):
    """Apply one of :data:`MORPHISM_NAMES`; ``FD`` takes a pair ``(a, b)``."""
    if name == "FD":
        if not (isinstance(x, tuple) and len(x) == 2):
            raise RingError("FD expects a pair (a, b)")
        return frolicher_defect(*x)
    if not isinstance(x, GradedPoly):
        raise RingError(f"{name} expects a GradedPoly")
    if name == "p_mod_xy":
        return p_mod_xy(x)
    if name == "chi":
        if x.ring.id not in _CHI:
            raise RingError(f"chi is defined on HXY and DR, not {x.ring.id}")
        return _CHI[x.ring.id](x)
    if name not in _SUBSTITUTIONS:
        raise RingError(f"unknown morphism {name!r}; known: {', '.join(MORPHISM_NAMES)}")
    return _SUBSTITUTIONS[name](x)


def phi(f):
    return _SUBSTITUTIONS["phi"](f)


def psi(f):
    return _SUBSTITUTIONS["psi"](f)


def Phi(f):  # noqa: N802 - keeps the customary capital name of the refined map
    return _SUBSTITUTIONS["Phi"](f)


def s_map(f):
    return _SUBSTITUTIONS["s"](f)


# ---------------------------------------------------------------- named elements


def gen(ring: str, text: str) -> GradedPoly:
    return parse_poly(text, ring)


@lru_cache(maxsize=None)
def _named(ring_id: str) -> dict[str, GradedPoly]:
    g4 = {v: GradedPoly.var("GEN4", v) for v in "ABCD"}
    rels4 = {
        "G": parse_poly("D^2 - A*B*D + C*(A^2 + B^2 - 4*C)", "GEN4"),
        "Q": parse_poly("A^2*C - D^2", "GEN4"),
        "R": parse_poly("B*D - 2*A*C", "GEN4"),
        "S": parse_poly("B^2 - 4*C", "GEN4"),
        "T": parse_poly("A*B - 2*D", "GEN4"),
    }
    if ring_id == "GEN4":
        return {**g4, **rels4}
    if ring_id == "HXY":
        out = {k: phi(v) for k, v in {**g4, **rels4}.items()}
        out["d"] = parse_poly("(x+2*x*y+x*y^2)*z^2", "HXY")
        out["e"] = parse_poly("(x^2+x^2*y+x*y^2+x*y^3)*z^3", "HXY")
        return out
    if ring_id == "DR":
        out = {k: psi(v) for k, v in {**g4, **rels4}.items()}
        out["d"] = parse_poly("(t+2*t^2+t^3)*z^2", "DR")
        out["e"] = parse_poly("(t^2+2*t^3+t^4)*z^3", "DR")
        return out
    if ring_id == "GEN5":
        out = {v: GradedPoly.var("GEN5", v) for v in "ABCLM"}
        out["K"] = quartic_relation()
        return out
    if ring_id == "RB":
        return {v: Phi(GradedPoly.var("GEN5", v)) for v in "ABCLM"}
    raise RingError(f"no named elements for ring {ring_id}")


def named_elements(ring: "Ring | str") -> dict[str, GradedPoly]:
    """Named elements per ring.

    In HXY the letters A, B, C, D, G, Q, R, S, T are the images under phi
    and ``d``, ``e`` are the chosen lifts d̃, ẽ; in DR they are the images
    under psi together with d and e; in RB they are the images under Phi.
    """
    return dict(_named(get_ring(ring).id))


def quartic_relation() -> GradedPoly:
    return parse_poly("A*M*L - L^2 - C*M^2 - C*A^2 + 4*C^2", "GEN5")


def hodge_relation() -> GradedPoly:
    return _named("GEN4")["G"]


def de_rham_relations() -> list[GradedPoly]:
    n = _named("GEN4")
    return [n["Q"], n["T"], n["S"], n["R"]]


def parse_named(text: str, ring: "Ring | str") -> GradedPoly:
    ring = get_ring(ring)
    names = named_elements(ring) if ring.id in ("HXY", "DR", "GEN4", "GEN5", "RB") else {}
    return parse_poly(text, ring, names)


# ---------------------------------------------------------------- integer linear algebra


@dataclass(frozen=True)
class Diagonalization:
    """``U · M · V = D`` with U, V unimodular and D diagonal (rank r)."""

    U: list
    V: list
    diagonal: list
    rank: int
    ncols: int

    def saturated(self) -> bool:
        return all(abs(d) == 1 for d in self.diagonal)

    def index(self) -> int:
        out = 1
        for d in self.diagonal:
            out *= abs(d)
        return out


def diagonalize(rows: Sequence[Sequence[int]], ncols: int) -> Diagonalization:
    """Diagonalize an integer matrix by unimodular row and column operations.

    This is Smith form without the divisibility chain, which is all the
    membership and saturation arguments below need.
    """
    a = [list(r) for r in rows]
    m = len(a)
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    diag: list[int] = []
    t = 0
    while t < m and t < ncols:
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, ncols):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        u[t], u[i] = u[i], u[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
            for row in v:
                row[t], row[j] = row[j], row[t]
        while True:
            piv = a[t][t]
            clean = True
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    q = x // piv
                    if q:
                        ai, at = a[i], a[t]
                        for j in range(t, ncols):
                            if at[j]:
                                ai[j] -= q * at[j]
                        ui, ut = u[i], u[t]
                        for j in range(m):
                            if ut[j]:
                                ui[j] -= q * ut[j]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, ncols):
                x = a[t][j]
                if x:
                    q = x // piv
                    if q:
                        for row in a:
                            if row[t]:
                                row[j] -= q * row[t]
                        for row in v:
                            if row[t]:
                                row[j] -= q * row[t]
                    if a[t][j]:
                        clean = False
            if clean:
                break
            # a smaller remainder survives in row t or column t: make it the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t + 1, ncols) if a[t][j]]
            _, i, j = min(cand)
            if i != t:
                a[t], a[i] = a[i], a[t]
                u[t], u[i] = u[i], u[t]
            else:
                for row in a:
                    row[t], row[j] = row[j], row[t]
                for row in v:
                    row[t], row[j] = row[j], row[t]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        diag.append(a[t][t])
        t += 1
    return Diagonalization(u, v, diag, len(diag), ncols)


def integer_rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return diagonalize(rows, ncols).rank


@dataclass(frozen=True)
class Solution:
    """Outcome of solving ``x · M = target`` over ℤ (or ℚ in rational mode)."""

    solvable: bool
    coefficients: tuple | None = None
    kind: str = "ok"  # "ok" | "rational" | "integral"
    functional: tuple | None = None
    modulus: int | None = None


def solve_lattice(rows: Sequence[Sequence[int]], target: Sequence[int], rational: bool = False) -> Solution:
    """Express ``target`` as an integer (or rational) combination of ``rows``.

    On failure the returned functional ``w`` satisfies ``rows · w ≡ 0`` and
    ``target · w ≢ 0`` modulo ``modulus`` (exactly, when the modulus is
    ``None``), which certifies that no solution exists.
    """
    ncols = len(target)
    dz = diagonalize(rows, ncols)
    c = [sum(target[i] * dz.V[i][j] for i in range(ncols)) for j in range(ncols)]
    for j in range(dz.rank, ncols):
        if c[j]:
            w = tuple(dz.V[i][j] for i in range(ncols))
            return Solution(False, kind="rational", functional=w)
    y = []
    for j, d in enumerate(dz.diagonal):
        if c[j] % d and not rational:
            w = tuple(dz.V[i][j] for i in range(ncols))
            return Solution(False, kind="integral", functional=w, modulus=d)
        y.append(Fraction(c[j], d) if rational else c[j] // d)
    m = len(rows)
    x = [sum(y[j] * dz.U[j][i] for j in range(dz.rank)) for i in range(m)]
    x = [_normalize_coefficient(v) if isinstance(v, Fraction) else v for v in x]
    for j in range(ncols):
        if sum(x[i] * rows[i][j] for i in range(m)) != target[j]:
            raise ArithmeticError("lattice solve failed its own back-substitution check")
    return Solution(True, tuple(x))


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form (positive pivots, reduced above)."""
    a = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    col = 0
    while a and col < ncols:
        nz = [r for r in a if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for j in range(ncols):
                    r[j] -= q * piv[j]
            nz = [r for r in nz if r[col]]
        piv = nz[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        a = [r for r in a if r is not piv and any(r)]
        for r in out:
            q = r[col] // piv[col]
            if q:
                for j in range(ncols):
                    r[j] -= q * piv[j]
        out.append(piv)
        col += 1
    return out


def left_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """A ℤ-basis (in Hermite form) of ``{x : x · rows = 0}``."""
    dz = diagonalize(rows, ncols)
    basis = [list(dz.U[i]) for i in range(dz.rank, len(rows))]
    return hermite_rows(basis, len(rows))


# ---------------------------------------------------------------- formal subrings


@dataclass(frozen=True)
class SubringSpec:
    id: str
    ring: str
    description: str


SUBRINGS = {
    s.id: s
    for s in (
        SubringSpec("Hform", "HXY", "formal Hodge polynomials: h^{p,q} = h^{n-p,n-q}"),
        SubringSpec("DRform", "DR", "formal Poincaré polynomials: b_k = b_{2n-k}, 2 | b_n for n odd"),
        SubringSpec("HDRform", "HXY×DR", "pairs with equal Euler characteristic, h^{0,0} = b_0, FD = 0 up to degree 2"),
        SubringSpec("RBprime", "RB", "refined Betti polynomials subject to (B1)-(B3)"),
        SubringSpec("RBform", "RB", "refined Betti polynomials subject to (B1)-(B4)"),
    )
}


def get_subring(spec: "SubringSpec | str") -> SubringSpec:
    if isinstance(spec, SubringSpec):
        return spec
    for key, val in SUBRINGS.items():
        if key.lower() == spec.lower():
            return val
    raise RingError(f"unknown subring {spec!r}; known: {', '.join(SUBRINGS)}")


def _mono(ring_id: str, **exps) -> tuple[int, ...]:
    ring = RINGS[ring_id]
    vec = [0] * len(ring.variables)
    for k, e in exps.items():
        vec[ring.index(k)] = e
    return tuple(vec)


def _poly(ring_id: str, monos: Iterable[tuple[int, ...]], coefficient: int = 1) -> GradedPoly:
    return GradedPoly(ring_id, {m: coefficient for m in set(monos)})


# Hform ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _hform_orbits(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    seen = set()
    out = []
    for p in range(n + 1):
        for q in range(n + 1):
            if (p, q) in seen:
                continue
            orbit = tuple(sorted({(p, q), (n - p, n - q)}))
            seen.update(orbit)
            out.append(((p, q),) + tuple(o for o in orbit if o != (p, q)))
    return tuple(out)


def _hform_basis(n: int) -> list[GradedPoly]:
    return [_poly("HXY", (_mono("HXY", x=p, y=q, z=n) for p, q in orbit)) for orbit in _hform_orbits(n)]


def _hform_violations(f: GradedPoly) -> list[str]:
    out = []
    for mono, c in f.terms.items():
        p, q, n = mono
        if p > n or q > n:
            out.append(f"support: x^{p}y^{q} outside the degree-{n} square")
            continue
        partner = f.coefficient((n - p, n - q, n))
        if partner != c:
            out.append(f"Serre: h^{{{p},{q}}} = {c} but h^{{{n - p},{n - q}}} = {partner} in degree {n}")
    return sorted(set(out))


# DRform ---------------------------------------------------------------


def _drform_basis(n: int) -> list[GradedPoly]:
    out = [_poly("DR", [_mono("DR", t=k, z=n), _mono("DR", t=2 * n - k, z=n)]) for k in range(n)]
    out.append(GradedPoly("DR", {_mono("DR", t=n, z=n): 2 if n % 2 else 1}))
    return out


def _drform_violations(f: GradedPoly) -> list[str]:
    out = []
    for (k, n), c in f.terms.items():
        if k > 2 * n:
            out.append(f"support: t^{k} in degree {n}")
            continue
        partner = f.coefficient((2 * n - k, n))
        if partner != c:
            out.append(f"Poincaré: b_{k} = {c} but b_{2 * n - k} = {partner} in degree {n}")
        if k == n and n % 2 and c % 2:
            out.append(f"parity: b_{n} = {c} is odd in odd degree {n}")
    return sorted(set(out))


# RBprime / RBform ------------------------------------------------------


def sym_rb(k: int, p: int, q: int, n: int) -> GradedPoly:
    """Sym_k^{p,q}(n): the sum of the distinct monomials in the orbit of x^p y^q h^k z^n."""
    monos = {
        (p, q, k, n),
        (q, p, k, n),
        (n - p, n - q, 2 * n - k, n),
        (n - q, n - p, 2 * n - k, n),
    }
    if any(e < 0 for m in monos for e in m):
        raise ValueError(f"Sym_{k}^{{{p},{q}}}({n}) has a monomial with a negative exponent")
    return _poly("RB", monos)


def sym_rb_label(k, p, q, n) -> str:
    return f"Sym_{k}^{{{p},{q}}}({n})"


@lru_cache(maxsize=None)
def rbprime_index(n: int) -> tuple[tuple[int, int, int], ...]:
    """(k, p, q) of the lemma's basis, in its order."""
    out = []
    for k in range(n):
        for p in range(k + 1):
            for q in range(p + 1):
                out.append((k, p, q))
    for p in range(n + 1):
        for q in range(p + 1):
            if p + q <= n:
                out.append((n, p, q))
    return tuple(out)


def _rb_orbit(k, p, q, n):
    return {(p, q, k), (q, p, k), (n - p, n - q, 2 * n - k), (n - q, n - p, 2 * n - k)}


def _b4_forbidden(n: int) -> set[tuple[int, int, int]]:
    """(p, q, k) positions forced to vanish by the boundary case condition."""
    out = {(1, 1, 1)}
    out.update((n, j, n) for j in range(1, n + 1))
    return out


@lru_cache(maxsize=None)
def rbform_index(n: int) -> tuple[tuple[int, int, int], ...]:
    bad = _b4_forbidden(n)
    return tuple(kpq for kpq in rbprime_index(n) if not (_rb_orbit(*kpq, n) & bad))


def _rb_violations(f: GradedPoly, with_b4: bool) -> list[str]:
    out = []
    for (p, q, k, n), c in f.terms.items():
        if not (0 <= p <= k and 0 <= q <= k) or p > n or q > n:
            out.append(f"B1: b_{k}^{{{p},{q}}} = {c} outside the allowed support in degree {n}")
        conj = f.coefficient((q, p, k, n))
        if conj != c:
            out.append(f"B2: b_{k}^{{{p},{q}}} = {c} but b_{k}^{{{q},{p}}} = {conj} in degree {n}")
        if 2 * n - k < 0 or n - p < 0 or n - q < 0:
            partner = 0
        else:
            partner = f.coefficient((n - p, n - q, 2 * n - k, n))
        if partner != c:
            out.append(f"B3: b_{k}^{{{p},{q}}} = {c} but b_{2 * n - k}^{{{n - p},{n - q}}} = {partner} in degree {n}")
        if with_b4 and (p, q, k) in _b4_forbidden(n) and n >= 1:
            out.append(f"B4: b_{k}^{{{p},{q}}} = {c} must vanish in degree {n}")
    return sorted(set(out))


# dispatch ---------------------------------------------------------------


def formal_basis(spec: "SubringSpec | str", n: int) -> list:
    """Deterministic ℤ-basis of the degree-n slice of a formal subring.

    For HDRform the elements are pairs ``(a, b)``.
    """
    spec = get_subring(spec)
    if n < 0:
        raise ValueError("degree must be non-negative")
    if spec.id == "Hform":
        return _hform_basis(n)
    if spec.id == "DRform":
        return _drform_basis(n)
    if spec.id == "HDRform":
        return _hdrform_basis(n)
    index = rbprime_index(n) if spec.id == "RBprime" else rbform_index(n)
    return [sym_rb(k, p, q, n) for k, p, q in index]


def formal_rank(spec: "SubringSpec | str", n: int) -> int:
    return len(formal_basis(spec, n))


def formal_basis_labels(spec: "SubringSpec | str", n: int) -> list[str]:
    spec = get_subring(spec)
    if spec.id in ("RBprime", "RBform"):
        index = rbprime_index(n) if spec.id == "RBprime" else rbform_index(n)
        return [sym_rb_label(k, p, q, n) for k, p, q in index]
    if spec.id == "HDRform":
        return [f"({a}, {b})" for a, b in formal_basis(spec, n)]
    return [str(b) for b in formal_basis(spec, n)]


def formal_violations(spec: "SubringSpec | str", f) -> list[str]:
    """Conditions of the formal subring that ``f`` fails (empty if it is a member)."""
    spec = get_subring(spec)
    if spec.id == "HDRform":
        a, b = f
        return _hdr_violations(a, b)
    expected = "HXY" if spec.id == "Hform" else "DR" if spec.id == "DRform" else "RB"
    if f.ring.id != expected:
        raise RingError(f"{spec.id} lives in {expected}, not {f.ring.id}")
    if spec.id == "Hform":
        return _hform_violations(f)
    if spec.id == "DRform":
        return _drform_violations(f)
    return _rb_violations(f, with_b4=spec.id == "RBform")


def formal_coordinates(spec: "SubringSpec | str", f: GradedPoly, n: int) -> list[int]:
    """Coordinates of a degree-n member in :func:`formal_basis` (raises if not a member)."""
    spec = get_subring(spec)
    if spec.id == "HDRform":
        raise RingError("use hdr_coordinates for pairs")
    comp = f.component(n)
    if f != comp:
        raise ValueError(f"element has components outside degree {n}")
    bad = formal_violations(spec, comp)
    if bad:
        raise ValueError(f"not in {spec.id}: {bad[0]}")
    if spec.id == "Hform":
        return [comp.coefficient((p, q, n)) for (p, q), *_ in _hform_orbits(n)]
    if spec.id == "DRform":
        coords = [comp.coefficient((k, n)) for k in range(n)]
        mid = comp.coefficient((n, n))
        coords.append(mid // 2 if n % 2 else mid)
        return coords
    index = rbprime_index(n) if spec.id == "RBprime" else rbform_index(n)
    return [comp.coefficient((p, q, k, n)) for k, p, q in index]


# HDRform ----------------------------------------------------------------


def _hdr_constraints(n: int) -> list[list[int]]:
    """Columns of the constraint map on Hform_n ⊕ DRform_n (one row per basis element)."""
    hb, db = _hform_basis(n), _drform_basis(n)
    chi_h = _CHI["HXY"]
    chi_d = _CHI["DR"]
    h00, b0, s = _SUBSTITUTIONS["h00"], _SUBSTITUTIONS["b0"], _SUBSTITUTIONS["s"]
    zmono = (n,)

    def row(a: GradedPoly | None, b: GradedPoly | None) -> list[int]:
        za = GradedPoly.zero("HXY") if a is None else a
        zb = GradedPoly.zero("DR") if b is None else b
        vals = [
            chi_h(za).coefficient(zmono) - chi_d(zb).coefficient(zmono),
            h00(za).coefficient(zmono) - b0(zb).coefficient(zmono),
        ]
        if n <= 2:
            fd = s(za) - zb
            vals += [fd.coefficient((k, n)) for k in range(2 * n + 1)]
        return vals

    return [row(a, None) for a in hb] + [row(None, b) for b in db]


@lru_cache(maxsize=None)
def _hdr_kernel(n: int) -> tuple[tuple[int, ...], ...]:
    rows = _hdr_constraints(n)
    return tuple(tuple(r) for r in left_kernel(rows, len(rows[0])))


def _hdrform_basis(n: int) -> list[tuple[GradedPoly, GradedPoly]]:
    hb, db = _hform_basis(n), _drform_basis(n)
    out = []
    for vec in _hdr_kernel(n):
        a = GradedPoly.zero("HXY")
        b = GradedPoly.zero("DR")
        for c, e in zip(vec[: len(hb)], hb):
            a = a + e * c
        for c, e in zip(vec[len(hb):], db):
            b = b + e * c
        out.append((a, b))
    return out


def _hdr_violations(a: GradedPoly, b: GradedPoly) -> list[str]:
    out = [f"Hform {v}" for v in _hform_violations(a)] + [f"DRform {v}" for v in _drform_violations(b)]
    if _CHI["HXY"](a) != _CHI["DR"](b):
        out.append(f"χ: χ(a) = {_CHI['HXY'](a)} but χ(b) = {_CHI['DR'](b)}")
    if _SUBSTITUTIONS["h00"](a) != _SUBSTITUTIONS["b0"](b):
        out.append(f"h00: h^{{0,0}}(a) = {_SUBSTITUTIONS['h00'](a)} but b_0(b) = {_SUBSTITUTIONS['b0'](b)}")
    fd = frolicher_defect(a, b).truncate(2)
    if fd:
        out.append(f"FD_≤2: {fd} ≠ 0")
    return out


# ---------------------------------------------------------------- membership


@dataclass(frozen=True)
class Certificate:
    """``target = Σ coefficient · element`` with the elements spelled out."""

    target: object
    terms: tuple  # ((label, coefficient), ...), zero coefficients omitted
    member: bool = field(default=True, init=False)

    def __bool__(self):
        return True

    def __str__(self):
        if not self.terms:
            return "= 0"
        parts = []
        for label, c in self.terms:
            parts.append(label if c == 1 else f"-{label}" if c == -1 else f"{c}*{label}")
        return "= " + " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class Refusal:
    """Proof that the target is not in the requested lattice.

    ``kind`` is ``"conditions"`` (a defining condition fails; see
    ``violations``), ``"rational"`` (not even in the rational span), or
    ``"integral"`` (in the rational span but not the integral one).  For the
    last two kinds, ``functional`` maps each spanning element to a multiple
    of ``modulus`` (to zero if ``modulus`` is ``None``) but not the target.
    """

    target: object
    kind: str
    violations: tuple = ()
    functional: tuple = ()  # ((monomial, weight), ...)
    modulus: int | None = None
    member: bool = field(default=False, init=False)

    def __bool__(self):
        return False

    def __str__(self):
        if self.kind == "conditions":
            return "refused: " + "; ".join(self.violations)
        if self.kind == "rational":
            return "refused: not in the rational span (a functional kills every generator but not the target)"
        return f"refused: in the rational span but not the integral span (obstruction modulo {self.modulus})"


def generator_monomials(degrees: Mapping[str, int], n: int) -> list[tuple[tuple[str, int], ...]]:
    """All monomials of weighted degree n in generators of the given degrees."""
    names = sorted(degrees, key=lambda k: (degrees[k], k))
    out: list = []

    def rec(i, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        if i == len(names):
            return
        name = names[i]
        d = degrees[name]
        if d <= 0:
            raise ValueError(f"generator {name} must have positive degree")
        for e in range(remaining // d, -1, -1):
            rec(i + 1, remaining - e * d, acc + ([(name, e)] if e else []))

    rec(0, n, [])
    return out


def monomial_label(mono: Sequence[tuple[str, int]]) -> str:
    if not mono:
        return "1"
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in mono)


def _evaluate_monomial(mono, gens: Mapping[str, GradedPoly], ring: Ring, cache: dict) -> GradedPoly:
    key = tuple(mono)
    if key in cache:
        return cache[key]
    out = GradedPoly.constant(ring, 1)
    for name, e in mono:
        out = out * gens[name] ** e
    cache[key] = out
    return out


def _vectors(polys: Sequence[GradedPoly], extra: GradedPoly | None = None):
    """Integer coordinate vectors over the union of supports, merging equal columns."""
    support = set()
    for f in polys:
        support.update(f.terms)
    if extra is not None:
        support.update(extra.terms)
    monos = sorted(support)
    columns: dict = {}
    for m in monos:
        col = tuple(f.coefficient(m) for f in polys) + ((extra.coefficient(m),) if extra is not None else ())
        columns.setdefault(col, m)
    reps = list(columns.values())
    rows = [[f.coefficient(m) for m in reps] for f in polys]
    tgt = [extra.coefficient(m) for m in reps] if extra is not None else None
    return rows, tgt, reps


def membership(spec_or_generators, target, n: int | None = None, rational: bool = False):
    """Decide membership of ``target`` (degree n) and certify the answer.

    ``spec_or_generators`` is either a formal subring (id or
    :class:`SubringSpec`) or a mapping ``name -> GradedPoly`` of homogeneous
    generators; in the latter case the question is whether the target lies
    in the degree-n part of the subring they generate.
    """
    if isinstance(spec_or_generators, (str, SubringSpec)):
        return _formal_membership(get_subring(spec_or_generators), target, n)
    gens = dict(spec_or_generators)
    if not gens:
        raise ValueError("empty generator set")
    ring = next(iter(gens.values())).ring
    if target.ring != ring:
        raise RingError(f"target lives in {target.ring.id}, generators in {ring.id}")
    if n is None:
        n = target.degree if target else 0
    comp = target.component(n)
    if comp != target:
        raise ValueError(f"target has components outside degree {n}")
    degrees = {}
    for name, g in gens.items():
        if not g or not g.is_homogeneous():
            raise ValueError(f"generator {name} must be a nonzero homogeneous element")
        degrees[name] = g.degree
    monos = generator_monomials(degrees, n)
    cache: dict = {}
    values = [_evaluate_monomial(m, gens, ring, cache) for m in monos]
    if not values:
        if comp:
            return Refusal(target, "rational", functional=tuple((m, 1) for m in comp.terms))
        return Certificate(target, ())
    rows, tgt, reps = _vectors(values, comp)
    sol = solve_lattice(rows, tgt, rational=rational)
    if sol.solvable:
        terms = tuple((monomial_label(m), c) for m, c in zip(monos, sol.coefficients) if c)
        return Certificate(target, terms)
    functional = tuple((m, w) for m, w in zip(reps, sol.functional) if w)
    return Refusal(target, sol.kind, functional=functional, modulus=sol.modulus)


def check_refusal(refusal: Refusal, generators: Mapping[str, GradedPoly], n: int) -> bool:
    """Re-verify a lattice refusal independently of how it was found."""
    weights = dict(refusal.functional)

    def pair(f: GradedPoly):
        return sum(c * weights.get(m, 0) for m, c in f.terms.items())

    mod = refusal.modulus
    degrees = {k: g.degree for k, g in generators.items()}
    ring = next(iter(generators.values())).ring
    cache: dict = {}
    for mono in generator_monomials(degrees, n):
        val = pair(_evaluate_monomial(mono, generators, ring, cache))
        if (val % mod if mod else val) != 0:
            return False
    t = pair(refusal.target.component(n))
    return (t % mod if mod else t) != 0


def certificate_value(cert: Certificate, generators: Mapping[str, GradedPoly]) -> GradedPoly:
    """Evaluate a generator-monomial certificate back to a polynomial."""
    ring = next(iter(generators.values())).ring
    out = GradedPoly.zero(ring)
    for label, c in cert.terms:
        out = out + parse_poly(label, ring, generators) * c
    return out


def _formal_membership(spec: SubringSpec, target, n: int | None):
    if spec.id == "HDRform":
        a, b = target
        bad = _hdr_violations(a, b)
        if bad:
            return Refusal(target, "conditions", violations=tuple(bad))
        if n is None:
            degs = sorted(set(a.degrees()) | set(b.degrees()))
            n = degs[0] if degs else 0
        coords = formal_coordinates("Hform", a, n) + formal_coordinates("DRform", b, n)
        kernel = [list(r) for r in _hdr_kernel(n)]
        sol = solve_lattice(kernel, coords)
        if not sol.solvable:  # cannot happen: the kernel lattice is saturated
            return Refusal(target, sol.kind, modulus=sol.modulus)
        labels = formal_basis_labels(spec, n)
        return Certificate(target, tuple((lab, c) for lab, c in zip(labels, sol.coefficients) if c))
    bad = formal_violations(spec, target)
    if bad:
        return Refusal(target, "conditions", violations=tuple(bad))
    if n is None:
        n = target.degree if target else 0
    coords = formal_coordinates(spec, target, n)
    labels = formal_basis_labels(spec, n)
    return Certificate(target, tuple((lab, c) for lab, c in zip(labels, coords) if c))


# ---------------------------------------------------------------- presentations


@dataclass(frozen=True)
class PresentationReport:
    morphism: str
    degree: int
    relations_vanish: bool
    source_rank: int
    ideal_rank: int
    image_rank: int
    target_rank: int
    surjective_over_z: bool
    ideal_saturated: bool

    @property
    def kernel_rank(self) -> int:
        return self.source_rank - self.image_rank

    @property
    def ok(self) -> bool:
        return (
            self.relations_vanish
            and self.ideal_rank == self.kernel_rank
            and self.image_rank == self.target_rank
            and self.surjective_over_z
            and self.ideal_saturated
        )

    def summary(self) -> str:
        return (
            f"{self.morphism} degree {self.degree}: source {self.source_rank}, ideal {self.ideal_rank}, "
            f"image {self.image_rank}, target {self.target_rank}, "
            f"relations vanish {self.relations_vanish}, onto over ℤ {self.surjective_over_z}, "
            f"ideal saturated {self.ideal_saturated} -> {'pass' if self.ok else 'FAIL'}"
        )


_PRESENTATION_TARGET = {"phi": "Hform", "psi": "DRform", "Phi": "RBprime"}


def default_relations(morphism: str) -> list[GradedPoly]:
    if morphism == "phi":
        return [hodge_relation()]
    if morphism == "psi":
        return de_rham_relations()
    if morphism == "Phi":
        return [quartic_relation()]
    raise RingError(f"no presentation known for {morphism!r}")


def _check_bound(n: int, bound: int | None):
    bound = DEFAULT_DEGREE_BOUND if bound is None else bound
    if n > bound:
        raise DegreeBoundError(f"degree {n} exceeds the configured bound {bound}")


def verify_presentation(morphism: str, relations: Sequence[GradedPoly] | None, n: int,
                        bound: int | None = None, strict: bool = True) -> PresentationReport:
    """Certify ``ker(morphism)_n = (relations)_n`` and surjectivity onto the formal ring.

    The relations must vanish; the ideal they generate in degree n must
    have rank ``rank(source_n) − rank(image_n)`` and be saturated; and the
    image must be the full lattice of the formal target.  Since the ideal
    sits inside the (saturated) kernel, equal rank plus saturation gives
    equality over ℤ.
    """
    _check_bound(n, bound)
    m = get_morphism(morphism)
    spec = _PRESENTATION_TARGET.get(morphism)
    if spec is None:
        raise RingError(f"no formal target for {morphism!r}")
    rels = default_relations(morphism) if relations is None else list(relations)
    source = RINGS[m.source]
    degrees = {v: w for v, w in zip(source.variables, source.weights)}
    monos = generator_monomials(degrees, n)
    gens = {v: GradedPoly.var(source, v) for v in source.variables}
    cache: dict = {}
    src_polys = [_evaluate_monomial(mo, gens, source, cache) for mo in monos]
    images = [m(f) for f in src_polys]
    trank = formal_rank(spec, n)
    img_rows = [formal_coordinates(spec, g, n) for g in images]
    dz = diagonalize(img_rows, trank) if img_rows else None
    image_rank = dz.rank if dz else 0
    onto = image_rank == trank and (dz is None or dz.saturated())
    vanish = all(not m(r) for r in rels)
    index = {tuple(sorted(f.terms))[0]: i for i, f in enumerate(src_polys)}
    ideal_rows = []
    for rel in rels:
        d = rel.degree
        if d is None or d > n:
            continue
        for mo in generator_monomials(degrees, n - d):
            prod = rel * _evaluate_monomial(mo, gens, source, cache)
            row = [0] * len(src_polys)
            for mono, c in prod.terms.items():
                row[index[mono]] = c
            ideal_rows.append(row)
    if ideal_rows:
        iz = diagonalize(ideal_rows, len(src_polys))
        ideal_rank, saturated = iz.rank, iz.saturated()
    else:
        ideal_rank, saturated = 0, True
    rep = PresentationReport(morphism, n, vanish, len(src_polys), ideal_rank, image_rank, trank, onto, saturated)
    if strict and (rep.ideal_rank != rep.kernel_rank or rep.image_rank != rep.target_rank):
        raise PresentationMismatchError(rep.summary())
    return rep


def verify_identity(lhs: GradedPoly, rhs: GradedPoly, morphism: str | None = None) -> bool:
    """Exact equality, optionally after pushing both sides through a morphism."""
    if morphism is not None:
        lhs, rhs = apply_morphism(morphism, lhs), apply_morphism(morphism, rhs)
    if lhs.ring != rhs.ring:
        raise RingError(f"sides live in {lhs.ring.id} and {rhs.ring.id}")
    return lhs == rhs


def check_identity_text(text: str, ring: "Ring | str" = "HXY") -> bool:
    """Check an identity such as ``R=2e-Bd`` among the named elements of a ring."""
    if text.count("=") != 1:
        raise RingError("identity must contain exactly one '='")
    lhs, rhs = text.split("=")
    return verify_identity(parse_named(lhs, ring), parse_named(rhs, ring))


def rb_series_rank(n: int) -> int:
    return (2 * n ** 3 + 9 * n ** 2 + 16 * n + 12) // 12


def generator_ring_rank(weights: Sequence[int], n: int) -> int:
    """Number of monomials of weighted degree n."""
    counts = [1] + [0] * n
    for w in weights:
        for d in range(w, n + 1):
            counts[d] += counts[d - w]
    return counts[n]


# ---------------------------------------------------------------- RBform generation


def rbform_generators(n_max: int) -> dict[str, GradedPoly]:
    """The generating set of RBform up to degree n_max: A, B, C, L, Sym_2^{2,1}(3), CM, L_k, M_k."""
    rb = named_elements("RB")
    out = {"A": rb["A"], "B": rb["B"], "C": rb["C"], "L": rb["L"]}
    if n_max >= 3:
        out["S213"] = sym_rb(2, 2, 1, 3)
        out["CM"] = sym_rb(3, 1, 1, 3)
    for k in range(3, n_max + 1):
        out[f"L{k}"] = sym_rb(k - 1, 0, 0, k)
        out[f"M{k}"] = sym_rb(k - 1, k - 1, k - 1, k)
    return out


def _rbform_lattice_rows(polys: Sequence[GradedPoly], n: int) -> list[list[int]]:
    return [formal_coordinates("RBprime", f, n) for f in polys]


def lower_degree_products(n: int) -> list[GradedPoly]:
    """Spanning set of the degree-n part of the subring generated by RBform in degrees < n."""
    out = []
    for i in range(1, n // 2 + 1):
        left = formal_basis("RBform", i)
        right = formal_basis("RBform", n - i)
        for f in left:
            for g in right:
                out.append(f * g)
    return out


@dataclass(frozen=True)
class RBFormDegree:
    degree: int
    rank: int
    generated: bool
    new_generators: tuple  # ((name, not in the lower-degree subring over ℤ, ... over ℚ), ...)


@dataclass(frozen=True)
class RBFormReport:
    degrees: tuple
    identities: tuple  # ((description, holds), ...)

    @property
    def ok(self) -> bool:
        return (
            all(d.generated for d in self.degrees)
            and all(z for d in self.degrees for _, z, _ in d.new_generators)
            and all(ok for _, ok in self.identities)
        )


def rbform_generators_check(n_max: int, bound: int | None = None) -> RBFormReport:
    """Degreewise: the listed generators span RBform_n over ℤ, and L_n, M_n are new in degree n."""
    _check_bound(n_max, bound)
    gens = rbform_generators(n_max)
    degs = []
    for n in range(0, n_max + 1):
        rank = formal_rank("RBform", n)
        if n == 0:
            degs.append(RBFormDegree(0, rank, rank == 1, ()))
            continue
        avail = {k: g for k, g in gens.items() if g.degree <= n}
        degrees = {k: g.degree for k, g in avail.items()}
        cache: dict = {}
        values = [_evaluate_monomial(m, avail, RINGS["RB"], cache) for m in generator_monomials(degrees, n)]
        inside = all(not _rb_violations(v, with_b4=True) for v in values)
        rows = [[c for c, kpq in zip(formal_coordinates("RBprime", v, n), rbprime_index(n)) if kpq in rbform_index(n)]
                for v in values] if inside else []
        dz = diagonalize(rows, rank) if rows else None
        generated = inside and dz is not None and dz.rank == rank and dz.saturated()
        new = []
        if n >= 3:
            lower = lower_degree_products(n)
            lrows = _rbform_lattice_rows(lower, n)
            for name in (f"L{n}", f"M{n}"):
                tgt = formal_coordinates("RBprime", gens[name], n)
                over_z = not solve_lattice(lrows, tgt).solvable
                over_q = not solve_lattice(lrows, tgt, rational=True).solvable
                new.append((name, over_z, over_q))
        degs.append(RBFormDegree(n, rank, generated, tuple(new)))
    ids = []
    rb = named_elements("RB")
    if n_max >= 3:
        ids.append(("Sym_2^{2,1}(3) = Φ(ABM) − Φ(BL)",
                    sym_rb(2, 2, 1, 3) == rb["A"] * rb["B"] * rb["M"] - rb["B"] * rb["L"]))
        ids.append(("Sym_3^{1,1}(3) = Φ(CM)", sym_rb(3, 1, 1, 3) == rb["C"] * rb["M"]))
    for k in range(0, n_max - 1):
        lhs = rb["L"] * rb["M"] ** k
        rhs = GradedPoly.zero("RB")
        for i in range(k + 1):
            rhs = rhs + sym_rb(k + 1, i, i, k + 2) * comb(k, i)
        ids.append((f"Φ(LM^{k}) = Σ C({k},i) Sym_{k + 1}^{{i,i}}({k + 2})", lhs == rhs))
    return RBFormReport(tuple(degs), tuple(ids))


def top_generator_coefficients(f: GradedPoly, n: int) -> dict:
    """Coefficients of the degree-n generators in RBform_n = (lower-degree products)_n ⊕ ⟨new generators⟩.

    The new generators are L_n and M_n, plus Sym_2^{2,1}(3) and CM when
    n = 3.  Their coefficients are unique because they are independent
    modulo the lower-degree part (checked here, over ℚ).
    """
    if n < 3:
        raise ValueError("L_n and M_n are generators from degree 3 on")
    tops = {k: g for k, g in rbform_generators(n).items() if g.degree == n}
    lower = _rbform_lattice_rows(lower_degree_products(n), n)
    top = _rbform_lattice_rows(list(tops.values()), n)
    width = formal_rank("RBprime", n)
    if diagonalize(lower + top, width).rank != diagonalize(lower, width).rank + len(top):
        raise ArithmeticError("new generators are not independent modulo lower-degree products")
    sol = solve_lattice(top + lower, formal_coordinates("RBprime", f, n), rational=True)
    if not sol.solvable:
        raise ValueError("element is not in the span of RBform generators")
    return dict(zip(tops, sol.coefficients[: len(top)]))


def rbform_mod_c_basis(n: int) -> list[GradedPoly]:
    """Representatives of a basis of RBform_n / C·RBform_{n−2}.

    The listed family: Sym_n^{n,0}(n), Sym_k^{p,0}(n) and Sym_k^{k,p}(n) for
    0 ≤ p ≤ k ≤ n−1, Sym_n^{n−1,p}(n) for 2 ≤ p ≤ n−1, and Sym_3^{2,2}(n),
    which is C times the (B4)-forbidden b_1^{1,1} slot and so never lies in
    C·RBform_{n−2}.  Orbit coincidences are removed; members violating (B4)
    are dropped.
    """
    cand = [(n, n, 0)]
    for k in range(n):
        for p in range(k + 1):
            cand.append((k, p, 0))
            cand.append((k, k, p))
    for p in range(2, n):
        cand.append((n, n - 1, p))
    if n >= 3:
        cand.append((3, 2, 2))
    seen = set()
    out = []
    bad = _b4_forbidden(n)
    for k, p, q in cand:
        orbit = frozenset(_rb_orbit(k, p, q, n))
        if orbit in seen or orbit & bad:
            continue
        if any(min(pq) < 0 for pq in orbit):
            continue
        seen.add(orbit)
        out.append(sym_rb(k, p, q, n))
    return out


def quotient_by_c_check(n: int) -> tuple[int, int, bool]:
    """(listed count, rank RBform_n − rank RBform_{n−2}, listed family + C·RBform_{n−2} is a ℤ-basis)."""
    listed = rbform_mod_c_basis(n)
    expected = formal_rank("RBform", n) - (formal_rank("RBform", n - 2) if n >= 2 else 0)
    c = named_elements("RB")["C"]
    spanning = listed + ([c * f for f in formal_basis("RBform", n - 2)] if n >= 2 else [])
    rows = [[v for v, kpq in zip(formal_coordinates("RBprime", f, n), rbprime_index(n)) if kpq in rbform_index(n)]
            for f in spanning]
    rank = formal_rank("RBform", n)
    dz = diagonalize(rows, rank) if rows else None
    unimodular = dz is not None and dz.rank == rank == len(spanning) and dz.saturated()
    return len(listed), expected, unimodular


# ---------------------------------------------------------------- bimeromorphic layer


def bimero_basis(n: int) -> list[GradedPoly]:
    """z^n, x z^n, y z^n, …, x^{n−1} z^n, y^{n−1} z^n, (x^n + y^n) z^n."""
    if n < 1:
        raise ValueError("bimero_basis needs n >= 1")
    out = [GradedPoly.monomial("HXY", z=n)]
    for i in range(1, n):
        out.append(GradedPoly.monomial("HXY", x=i, z=n))
        out.append(GradedPoly.monomial("HXY", y=i, z=n))
    out.append(GradedPoly.monomial("HXY", x=n, z=n) + GradedPoly.monomial("HXY", y=n, z=n))
    return out


@dataclass(frozen=True)
class BimeroReport:
    degree: int
    image_rank: int
    image_is_basis_span: bool
    kernel_rank: int
    c_multiples_rank: int
    c_multiples_saturated: bool

    @property
    def ok(self) -> bool:
        return (
            self.image_rank == 2 * self.degree
            and self.image_is_basis_span
            and self.kernel_rank == self.c_multiples_rank
            and self.c_multiples_saturated
        )


def verify_bimero(n: int, bound: int | None = None) -> BimeroReport:
    """Image of p on Hform_n is spanned by :func:`bimero_basis`, and ker p = C·Hform_{n−2}."""
    _check_bound(n, bound)
    hb = _hform_basis(n)
    images = [p_mod_xy(f) for f in hb]
    basis = bimero_basis(n)
    rows_img, _, reps = _vectors(images + basis)
    img_rows, bas_rows = rows_img[: len(images)], rows_img[len(images):]
    dz = diagonalize(img_rows, len(reps))
    same = all(solve_lattice(img_rows, b).solvable for b in bas_rows) and all(
        solve_lattice(bas_rows, r).solvable for r in img_rows
    )
    kernel_rank = len(hb) - dz.rank
    c = named_elements("HXY")["C"]
    lower = _hform_basis(n - 2) if n >= 2 else []
    crow = [formal_coordinates("Hform", c * f, n) for f in lower]
    if crow:
        cz = diagonalize(crow, len(hb))
        crank, csat = cz.rank, cz.saturated()
    else:
        crank, csat = 0, True
    in_kernel = all(not p_mod_xy(c * f) for f in lower)
    return BimeroReport(n, dz.rank, same, kernel_rank, crank, csat and in_kernel)


# ---------------------------------------------------------------- bridge from reports


@dataclass(frozen=True)
class ManifoldPolynomials:
    name: str
    n: int
    h: GradedPoly
    dR: GradedPoly
    rb: GradedPoly
    pages: tuple  # ((r, e_r polynomial), ...)
    fd: GradedPoly
    checks: tuple  # ((label, ok, detail), ...)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{label}: {detail}" for label, ok, detail in self.checks if not ok]

    def page(self, r: int) -> GradedPoly:
        pages = dict(self.pages)
        return pages[min(r, max(pages))]


def hodge_polynomial(n: int, table: Mapping[tuple[int, int], int]) -> GradedPoly:
    return GradedPoly("HXY", {(p, q, n): v for (p, q), v in table.items()})


def poincare_polynomial(n: int, betti: Sequence[int]) -> GradedPoly:
    return GradedPoly("DR", {(k, n): v for k, v in enumerate(betti)})


def refined_polynomial(n: int, table: Mapping[tuple[int, int, int], int]) -> GradedPoly:
    return GradedPoly("RB", {(p, q, k, n): v for (k, p, q), v in table.items()})


def diamond_to_poly(rows: Sequence[Sequence[int]]) -> GradedPoly:
    """Read a Hodge diamond printed top row first, p decreasing left to right."""
    n = (len(rows) - 1) // 2
    if len(rows) != 2 * n + 1:
        raise ValueError("a diamond has an odd number of rows")
    terms = {}
    for i, row in enumerate(rows):
        s = 2 * n - i
        ps = list(range(min(s, n), max(0, s - n) - 1, -1))
        if len(row) != len(ps):
            raise ValueError(f"row {i} of the diamond should have {len(ps)} entries")
        for p, v in zip(ps, row):
            if v:
                terms[(p, s - p, n)] = v
    return GradedPoly("HXY", terms)


def manifold_polynomials(report, strict: bool = True) -> ManifoldPolynomials:
    """Hodge, Poincaré, refined Betti and Frölicher polynomials of a report, with the universal checks.

    The checks are the formal ring conditions (Serre, Poincaré with parity,
    HDR^form, (B1)-(B4)) and the page relations: e_r^{0,0} = b_0,
    e_r^{n,0} = e_1^{n,0}, total Euler characteristic constant in r, pages
    constant from r = n on, and E_1 = E_2 for n ≤ 2.  With ``strict`` a
    failure raises, since for a geometric complex it signals an engine bug.
    """
    n = report.n
    h = hodge_polynomial(n, dict(report.hodge))
    dR = poincare_polynomial(n, report.betti)
    rb = refined_polynomial(n, dict(report.refined_betti))
    pages = tuple((pg.r, hodge_polynomial(n, dict(pg.dims))) for pg in report.frolicher_col)
    fd = frolicher_defect(h, dR)
    checks = []

    def add(label, bad):
        checks.append((label, not bad, "; ".join(bad) if bad else "ok"))

    add("Hform", _hform_violations(h))
    add("DRform", _drform_violations(dR))
    add("HDRform", _hdr_violations(h, dR))
    add("RBform", _rb_violations(rb, with_b4=True))
    add("rb refines b", [] if _SUBSTITUTIONS["rb_to_dr"](rb) == dR else ["Σ_{p,q} b_k^{p,q} ≠ b_k"])
    page_dims = [(r, dict(pg.dims)) for r, pg in zip((p.r for p in report.frolicher_col), report.frolicher_col)]
    b0 = report.betti[0] if report.betti else 0
    add("F1", [f"e_{r}^{{0,0}} = {d.get((0, 0), 0)} ≠ b_0 = {b0}" for r, d in page_dims if d.get((0, 0), 0) != b0])

    def euler(d):
        return sum((-1) ** (p + q) * v for (p, q), v in d.items())

    e1 = euler(page_dims[0][1]) if page_dims else 0
    add("F2", [f"χ(E_{r}) = {euler(d)} ≠ χ(E_1) = {e1}" for r, d in page_dims if euler(d) != e1])
    top = page_dims[0][1].get((n, 0), 0) if page_dims else 0
    add("F3", [f"e_{r}^{{{n},0}} changes" for r, d in page_dims if d.get((n, 0), 0) != top])
    corner = page_dims[0][1].get((0, 0), 0) if page_dims else 0
    add("F4", [f"e_{r}^{{0,0}} changes" for r, d in page_dims if d.get((0, 0), 0) != corner])
    stop = max(n, 1)
    ref = dict(page_dims[stop - 1][1]) if len(page_dims) >= stop else None
    add("F5", [f"E_{r} ≠ E_{stop}" for r, d in page_dims[stop:] if d != ref] if ref is not None else [])
    if n <= 2 and len(page_dims) >= 2:
        add("F6", [] if page_dims[0][1] == page_dims[1][1] else ["E_1 ≠ E_2 in dimension ≤ 2"])
    out = ManifoldPolynomials(report.name, n, h, dR, rb, pages, fd, tuple(checks))
    if strict and not out.ok:
        raise FormalViolationError(f"{report.name or 'report'}: " + "; ".join(out.failures()))
    return out
