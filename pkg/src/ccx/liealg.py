"""Structure equations of a Lie algebra with complex structure, and its forms.

A description fixes ``d`` on the holomorphic coframe ``phi1..phin``; ``d`` on
the conjugates is forced by reality, and the Leibniz rule extends it to the
whole exterior algebra.  Splitting ``d`` by bidegree gives the finite double
complex of left-invariant forms.

Forms are dicts from *monomials* to coefficients.  A monomial is a sorted
tuple of generator slots: slot ``j-1`` is ``phi_j`` and slot ``n+j-1`` is its
conjugate, so sorting puts holomorphic factors first, each group ascending.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .exactfield import (
    ONE,
    ZERO,
    GaussianRational,
    Matrix,
    ScalarSyntaxError,
    Subspace,
    parse_scalar,
    preimage,
)

__all__ = [
    "StructureError",
    "StructureSyntaxError",
    "NonIntegrableError",
    "IndexRangeError",
    "DSquaredError",
    "NonNilpotentWarning",
    "Term",
    "StructureEquations",
    "BigradedBasis",
    "D2Result",
    "parse_structure_equations",
    "validate_d_squared",
    "build_double_complex",
    "is_nilpotent",
    "wedge",
    "d_form",
]


class StructureError(ValueError):
    """Any problem with a structure-equation description."""


class StructureSyntaxError(StructureError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class NonIntegrableError(StructureError):
    pass


class IndexRangeError(StructureError):
    pass


class DSquaredError(StructureError):
    def __init__(self, result: "D2Result"):
        self.result = result
        super().__init__(f"d∘d ≠ 0 on phi{result.generator}: {result.describe()}")


class NonNilpotentWarning(UserWarning):
    pass


@dataclass(frozen=True, order=True)
class Term:
    """``coeff * w(a, b)`` with signed indices, negative meaning conjugate."""

    a: int
    b: int
    coeff: GaussianRational = field(compare=False)

    def bidegree(self) -> tuple[int, int]:
        anti = (self.a < 0) + (self.b < 0)
        return (2 - anti, anti)

    def __str__(self):
        return f"{self.coeff}*w({self.a},{self.b})"


def _slot(idx: int, n: int) -> int:
    return idx - 1 if idx > 0 else n - idx - 1


def _signed(slot: int, n: int) -> int:
    return slot + 1 if slot < n else -(slot - n + 1)


@dataclass(frozen=True)
class StructureEquations:
    """``d phi_j`` for ``j = 1..n`` as tuples of normalized :class:`Term`."""

    n: int
    d: tuple[tuple[Term, ...], ...]
    name: str = ""

    def differential(self, j: int) -> tuple[Term, ...]:
        if not 1 <= j <= self.n:
            raise IndexRangeError(f"generator phi{j} outside 1..{self.n}")
        return self.d[j - 1]

    @classmethod
    def from_terms(cls, n: int, d: dict[int, list[tuple]], name: str = "") -> "StructureEquations":
        """Build from ``{j: [(coeff, a, b), ...]}``, normalizing like the parser."""
        rows = []
        for j in range(1, n + 1):
            rows.append(_normalize_terms(n, [(GaussianRational.coerce(c), a, b) for c, a, b in d.get(j, [])], j))
        return cls(n, tuple(rows), name)

    def to_text(self) -> str:
        lines = [f"n = {self.n}"]
        for j, terms in enumerate(self.d, start=1):
            if not terms:
                continue
            parts = []
            for t in terms:
                c = t.coeff
                if c == ONE:
                    parts.append(f"w({t.a},{t.b})")
                elif c == -ONE:
                    parts.append(f"-w({t.a},{t.b})")
                else:
                    parts.append(f"({c})*w({t.a},{t.b})")
            rhs = " + ".join(parts).replace("+ -", "- ")
            lines.append(f"d phi{j} = {rhs}")
        return "\n".join(lines) + "\n"

    # -- the exterior derivative on monomials --------------------------------

    @cached_property
    def _generator_d(self) -> tuple[dict, ...]:
        """``d`` of each of the 2n generator slots as a 2-form."""
        n = self.n
        out = []
        for conj in (False, True):
            for terms in self.d:
                form: dict = {}
                for t in terms:
                    a, b, c = (t.a, t.b, t.coeff)
                    if conj:
                        a, b, c = -a, -b, c.conjugate()
                    sa, sb = _slot(a, n), _slot(b, n)
                    if sa > sb:
                        sa, sb, c = sb, sa, -c
                    key = (sa, sb)
                    v = form.get(key, ZERO) + c
                    if v:
                        form[key] = v
                    else:
                        form.pop(key, None)
                out.append(form)
        return tuple(out)

    def d_monomial(self, mono: tuple[int, ...]) -> dict:
        cache = self.__dict__.setdefault("_dcache", {})
        hit = cache.get(mono)
        if hit is not None:
            return hit
        gd = self._generator_d
        out: dict = {}
        for pos, s in enumerate(mono):
            two = gd[s]
            if not two:
                continue
            rest = mono[:pos] + mono[pos + 1 :]
            lead = -1 if pos % 2 else 1
            for (u, v), c in two.items():
                if u in rest or v in rest:
                    continue
                sign, key = _sort_sign(rest[:pos] + (u, v) + rest[pos:])
                val = out.get(key, ZERO) + (c if sign * lead > 0 else -c)
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        cache[mono] = out
        return out


def _sort_sign(seq: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    inv = 0
    m = len(seq)
    for i in range(m):
        si = seq[i]
        for j in range(i + 1, m):
            if seq[j] < si:
                inv += 1
    return (-1 if inv % 2 else 1), tuple(sorted(seq))


def _normalize_terms(n: int, raw: list[tuple], j: int) -> tuple[Term, ...]:
    acc: dict = {}
    for c, a, b in raw:
        for idx in (a, b):
            if idx == 0 or abs(idx) > n:
                raise IndexRangeError(f"index {idx} in d phi{j} outside ±1..±{n}")
        if a == b:
            raise StructureError(f"w({a},{b}) in d phi{j} repeats a factor")
        if a < 0 and b < 0:
            raise NonIntegrableError(
                f"term w({a},{b}) in d phi{j} has bidegree (0,2); the complex structure would not be integrable"
            )
        if _slot(a, n) > _slot(b, n):
            a, b, c = b, a, -c
        acc[(a, b)] = acc.get((a, b), ZERO) + c
    terms = [Term(a, b, c) for (a, b), c in acc.items() if c]
    terms.sort(key=lambda t: (_slot(t.a, n), _slot(t.b, n)))
    return tuple(terms)


# ------------------------------------------------------------------ parsing

_N_LINE = re.compile(r"\s*n\s*=\s*(\S+)\s*$")
_D_LINE = re.compile(r"\s*d\s+phi(\d+)\s*=", re.IGNORECASE)
_WEDGE = re.compile(r"w\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)")
_SIMPLE_SCALAR = re.compile(r"\d+(?:\s*/\s*\d+)?(?:\s*\*\s*i(?![\w(]))?|i(?![\w(])")


def _parse_rhs(text: str, offset: int, lineno: int) -> list[tuple]:
    terms = []
    pos = 0
    first = True
    L = len(text)

    def err(msg, at):
        raise StructureSyntaxError(msg, lineno, offset + at + 1)

    while True:
        while pos < L and text[pos].isspace():
            pos += 1
        if pos >= L:
            if first:
                err("empty right-hand side", pos)
            break
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
            while pos < L and text[pos].isspace():
                pos += 1
        elif not first:
            err("expected + or - between terms", pos)
        coeff = ONE
        if text.startswith("w(", pos):
            pass
        elif pos < L and text[pos] == "(":
            close = text.find(")", pos)
            if close < 0:
                err("unbalanced parenthesis", pos)
            try:
                coeff = parse_scalar(text[pos + 1 : close])
            except ScalarSyntaxError as exc:
                err(f"coefficient is not a Gaussian rational ({exc})", pos + 1 + exc.pos)
            pos = close + 1
            pos = _expect_star(text, pos, err)
        else:
            m = _SIMPLE_SCALAR.match(text, pos)
            if not m:
                err("expected a Gaussian-rational coefficient or w(a,b)", pos)
            coeff = parse_scalar(m.group(0))
            pos = _expect_star(text, m.end(), err)
        while pos < L and text[pos].isspace():
            pos += 1
        m = _WEDGE.match(text, pos)
        if not m:
            err("expected w(a,b)", pos)
        terms.append((coeff if sign > 0 else -coeff, int(m.group(1)), int(m.group(2))))
        pos = m.end()
        first = False
    return terms


def _expect_star(text, pos, err):
    while pos < len(text) and text[pos].isspace():
        pos += 1
    if pos >= len(text) or text[pos] != "*":
        err("expected '*' between coefficient and w(a,b)", pos)
    return pos + 1


def parse_structure_equations(text: str, name: str = "") -> StructureEquations:
    """Parse the line-oriented DSL (``n = 3`` / ``d phi3 = w(1,2)``)."""
    n = None
    raw: dict[int, tuple[int, list]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        m = _N_LINE.match(body)
        if m:
            if n is not None:
                raise StructureSyntaxError("n declared twice", lineno, 1)
            try:
                n = int(m.group(1))
            except ValueError:
                raise StructureSyntaxError("n must be an integer", lineno, m.start(1) + 1) from None
            if n < 0:
                raise StructureSyntaxError("n must be nonnegative", lineno, m.start(1) + 1)
            continue
        m = _D_LINE.match(body)
        if not m:
            col = len(body) - len(body.lstrip()) + 1
            raise StructureSyntaxError("expected 'n = <int>' or 'd phi<j> = ...'", lineno, col)
        j = int(m.group(1))
        if j in raw:
            raise StructureSyntaxError(f"d phi{j} defined twice", lineno, m.start(1) + 1)
        raw[j] = (lineno, _parse_rhs(body[m.end() :], m.end(), lineno))
    if n is None:
        raise StructureSyntaxError("missing 'n = <int>' declaration", 1, 1)
    d = []
    for j in raw:
        if not 1 <= j <= n:
            raise IndexRangeError(f"line {raw[j][0]}: generator phi{j} outside 1..{n}")
    for j in range(1, n + 1):
        d.append(_normalize_terms(n, raw[j][1], j) if j in raw else ())
    return StructureEquations(n, tuple(d), name)


# ------------------------------------------------------------- form algebra


def wedge(alpha: dict, beta: dict) -> dict:
    out: dict = {}
    for ma, ca in alpha.items():
        sa = set(ma)
        for mb, cb in beta.items():
            if sa.intersection(mb):
                continue
            sign, key = _sort_sign(ma + mb)
            v = out.get(key, ZERO) + (ca * cb if sign > 0 else -(ca * cb))
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def d_form(s: StructureEquations, form: dict) -> dict:
    out: dict = {}
    for mono, c in form.items():
        for key, v in s.d_monomial(mono).items():
            w = out.get(key, ZERO) + c * v
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return out


def form_to_text(form: dict, n: int) -> str:
    if not form:
        return "0"
    parts = []
    for mono in sorted(form):
        names = "∧".join(f"phi{_signed(s, n)}" if s < n else f"phibar{-_signed(s, n)}" for s in mono)
        parts.append(f"({form[mono]})*{names}")
    return " + ".join(parts)


@dataclass(frozen=True)
class D2Result:
    ok: bool
    generator: int | None = None
    three_form: tuple = ()
    n: int = 0

    def describe(self) -> str:
        if self.ok:
            return "d∘d = 0"
        return f"d(d phi{self.generator}) = {form_to_text(dict(self.three_form), self.n)}"

    def __bool__(self):
        return self.ok


def validate_d_squared(s: StructureEquations) -> D2Result:
    """Check ``d d phi_j = 0`` for each holomorphic generator (conjugates follow)."""
    for j in range(1, s.n + 1):
        dd = d_form(s, s.d_monomial((j - 1,)))
        if dd:
            return D2Result(False, j, tuple(sorted(dd.items())), s.n)
    return D2Result(True, n=s.n)


def is_nilpotent(s: StructureEquations) -> bool:
    """Whether the ascending series V_{i+1} = d^{-1}(Λ²V_i) exhausts the coframe."""
    n2 = 2 * s.n
    pairs = list(combinations(range(n2), 2))
    pidx = {p: i for i, p in enumerate(pairs)}
    gd = s._generator_d
    entries = {}
    for col, form in enumerate(gd):
        for key, c in form.items():
            entries[(pidx[key], col)] = c
    dmat = Matrix(len(pairs), n2, entries)
    v = Subspace.zero(n2)
    while True:
        wedges = []
        basis = v.basis
        for x in range(len(basis)):
            for y in range(x + 1, len(basis)):
                vec = {}
                for (u, w), i in pidx.items():
                    c = basis[x][u] * basis[y][w] - basis[x][w] * basis[y][u]
                    if c:
                        vec[i] = c
                if vec:
                    wedges.append(vec)
        nxt = preimage(dmat, Subspace(len(pairs), wedges))
        if nxt.dim == v.dim:
            return v.dim == n2
        v = nxt


# ---------------------------------------------------------- double complex


@dataclass(frozen=True)
class BigradedBasis:
    """Ordered ``(I, J)`` multi-indices per bidegree (1-based, lexicographic)."""

    n: int

    def elements(self, p: int, q: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        rng = range(1, self.n + 1)
        return [(I, J) for I in combinations(rng, p) for J in combinations(rng, q)]

    def monomial(self, I, J) -> tuple[int, ...]:
        return tuple(i - 1 for i in I) + tuple(self.n + j - 1 for j in J)


def build_double_complex(s: StructureEquations, name: str | None = None):
    """The double complex of left-invariant forms, with its real structure."""
    from .dcalg import DoubleComplex

    res = validate_d_squared(s)
    if not res:
        raise DSquaredError(res)
    n = s.n
    nil = is_nilpotent(s)
    if not nil:
        warnings.warn(
            f"{name or s.name or 'structure'}: lower central series does not terminate (not nilpotent)",
            NonNilpotentWarning,
            stacklevel=2,
        )
    basis = BigradedBasis(n)
    index: dict[tuple[int, int], dict] = {}
    elems: dict[tuple[int, int], list] = {}
    for p in range(n + 1):
        for q in range(n + 1):
            el = basis.elements(p, q)
            elems[(p, q)] = el
            index[(p, q)] = {basis.monomial(I, J): k for k, (I, J) in enumerate(el)}
    dims = {bd: len(el) for bd, el in elems.items()}
    dels, dbars = {}, {}
    for (p, q), el in elems.items():
        de, db = {}, {}
        for col, (I, J) in enumerate(el):
            for mono, c in s.d_monomial(basis.monomial(I, J)).items():
                hp = sum(1 for x in mono if x < n)
                if hp == p + 1:
                    de[(index[(p + 1, q)][mono], col)] = c
                elif hp == p:
                    db[(index[(p, q + 1)][mono], col)] = c
                else:  # pragma: no cover - excluded by the integrability check
                    raise NonIntegrableError("d produced a (-1,2) component")
        if p < n:
            dels[(p, q)] = Matrix(dims[(p + 1, q)], dims[(p, q)], de)
        if q < n:
            dbars[(p, q)] = Matrix(dims[(p, q + 1)], dims[(p, q)], db)
    real = {}
    for (p, q), el in elems.items():
        ent = {}
        sign = -1 if (p * q) % 2 else 1
        target = index[(q, p)]
        for col, (I, J) in enumerate(el):
            ent[(target[basis.monomial(J, I)], col)] = sign
        real[(p, q)] = Matrix(dims[(q, p)], dims[(p, q)], ent)
    return DoubleComplex(
        n,
        dims,
        dels,
        dbars,
        real_structure=real,
        name=name or s.name,
        geometric=True,
        meta={"source": "structure-equations", "nilpotent": nil},
    )
