"""Zigzag multiplicities, the universal ring and its formal counterpart.

A bounded double complex is, up to squares, a direct sum of zigzags, and the
multiplicities are read off from cohomology: odd zigzags from refined Betti
numbers, even zigzags from the differentials of the column and row
spectral sequences.  :func:`decompose` extracts them and then rebuilds every
invariant table from the model zigzags before returning; a mismatch raises.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .dcalg import (
    DoubleComplex,
    SupportError,
    ZigzagClass,
    direct_sum,
    tensor,
    zigzag_model,
)
from .invariants import InvariantReport, full_report

__all__ = [
    "ZigzagSum",
    "SymOrbit",
    "ReconstructionError",
    "decompose",
    "reconstruct_report",
    "uring_mul",
    "is_in_Uform",
    "zigzags_fitting",
    "sym_basis_Uform",
    "quotient_basis_mod_C",
    "QuotientCheckError",
    "blowup_delta",
    "exceptional_class",
    "c_class",
    "unit_class",
    "aggregate_identities",
]


class ReconstructionError(AssertionError):
    """The extracted multiplicities do not reproduce the input's invariants."""


class QuotientCheckError(AssertionError):
    """The combinatorial quotient basis disagrees with the rank computation."""


# ----------------------------------------------------------------- ZigzagSum

_LINE = re.compile(r"^\s*(-?\d+)\s*\*\s*(S\d?\[[^\]]*\])\s*@\s*(\d+)\s*$")


class ZigzagSum:
    """A finitely supported integer combination of zigzag classes in grade ``n``."""

    __slots__ = ("n", "_m")

    def __init__(self, n: int, mults: Mapping[ZigzagClass, int] | None = None):
        if n < 0:
            raise ValueError("grade must be nonnegative")
        self.n = n
        clean = {}
        for z, m in (mults or {}).items():
            if m:
                if not z.fits(n):
                    raise SupportError(f"{z.label()} does not fit in grade {n}")
                clean[z] = clean.get(z, 0) + m
        self._m = {z: m for z, m in clean.items() if m}

    @classmethod
    def of(cls, z: ZigzagClass, n: int, m: int = 1) -> "ZigzagSum":
        return cls(n, {z: m})

    def mult(self, z: ZigzagClass) -> int:
        return self._m.get(z, 0)

    def items(self):
        return sorted(self._m.items(), key=lambda kv: kv[0].sort_key())

    def classes(self):
        return [z for z, _ in self.items()]

    def __len__(self):
        return len(self._m)

    def __bool__(self):
        return bool(self._m)

    def _same_grade(self, other: "ZigzagSum"):
        if other.n != self.n:
            raise ValueError(f"cannot add classes of grades {self.n} and {other.n}")

    def __add__(self, other: "ZigzagSum") -> "ZigzagSum":
        self._same_grade(other)
        acc = dict(self._m)
        for z, m in other._m.items():
            acc[z] = acc.get(z, 0) + m
        return ZigzagSum(self.n, acc)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "ZigzagSum") -> "ZigzagSum":
        return self + (-other)

    def scale(self, k: int) -> "ZigzagSum":
        return ZigzagSum(self.n, {z: k * m for z, m in self._m.items()})

    def __mul__(self, other):
        if isinstance(other, ZigzagSum):
            return uring_mul(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, ZigzagSum) and self.n == other.n and self._m == other._m

    def __hash__(self):
        return hash((self.n, frozenset(self._m.items())))

    def is_nonnegative(self) -> bool:
        return all(m > 0 for m in self._m.values())

    def without_dots(self) -> "ZigzagSum":
        """The class modulo the Kähler part (linear combinations of dots)."""
        return ZigzagSum(self.n, {z: m for z, m in self._m.items() if not z.is_dot})

    def even_part(self) -> "ZigzagSum":
        return ZigzagSum(self.n, {z: m for z, m in self._m.items() if not z.is_odd})

    def sigma(self) -> "ZigzagSum":
        return ZigzagSum(self.n, {z.sigma(self.n): m for z, m in self._m.items()})

    def tau(self) -> "ZigzagSum":
        return ZigzagSum(self.n, {z.tau(): m for z, m in self._m.items()})

    def regrade(self, n: int) -> "ZigzagSum":
        return ZigzagSum(n, self._m)

    def orbit_coefficients(self) -> dict["SymOrbit", int]:
        """Coefficients in the Sym basis; raises if the sum is not symmetric."""
        out = {}
        seen = set()
        for z, m in self.items():
            if z in seen:
                continue
            orb = SymOrbit(z, self.n)
            for w in orb.elements:
                if self.mult(w) != m:
                    raise ValueError(f"{self} is not symmetric at {orb}")
                seen.add(w)
            out[orb] = m
        return out

    def to_text(self) -> str:
        return "\n".join(f"{m} * {z.label()} @ {self.n}" for z, m in self.items())

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "ZigzagSum":
        mults: dict = {}
        grade = n
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            m = _LINE.match(line)
            if not m:
                raise ValueError(f"not a zigzag-sum line: {raw!r}")
            g = int(m.group(3))
            if grade is None:
                grade = g
            elif g != grade:
                raise ValueError("mixed grades in one zigzag sum")
            z = ZigzagClass.parse(m.group(2))
            mults[z] = mults.get(z, 0) + int(m.group(1))
        if grade is None:
            raise ValueError("empty zigzag sum needs an explicit grade")
        return cls(grade, mults)

    def __repr__(self):
        body = " + ".join(f"{m}*{z.label()}" for z, m in self.items()) or "0"
        return f"ZigzagSum(n={self.n}: {body})"

    def model(self) -> DoubleComplex:
        """A complex in this class (only for nonnegative sums)."""
        if not self.is_nonnegative():
            raise ValueError("only classes with nonnegative multiplicities have a model")
        if not self._m:
            return DoubleComplex(self.n, {})
        parts = []
        for z, m in self.items():
            parts.extend([zigzag_model(z, self.n)] * m)
        return direct_sum(*parts)


# ------------------------------------------------------------------ SymOrbit


class SymOrbit:
    """The orbit of a zigzag under Serre duality and conjugation in grade ``n``."""

    __slots__ = ("n", "elements", "rep")

    def __init__(self, z: ZigzagClass, n: int):
        if not z.fits(n):
            raise SupportError(f"{z.label()} does not fit in grade {n}")
        self.n = n
        members = {z, z.sigma(n), z.tau(), z.sigma(n).tau()}
        self.elements = tuple(sorted(members, key=ZigzagClass.sort_key))
        self.rep = self.elements[0]

    @property
    def size(self) -> int:
        return len(self.elements)

    def as_sum(self) -> ZigzagSum:
        return ZigzagSum(self.n, {z: 1 for z in self.elements})

    def sort_key(self):
        return self.rep.sort_key()

    def label(self) -> str:
        return f"Sym {self.rep.label()} ({self.n})"

    def __eq__(self, other):
        return isinstance(other, SymOrbit) and self.n == other.n and self.elements == other.elements

    def __hash__(self):
        return hash((self.n, self.elements))

    def __repr__(self):
        return f"SymOrbit({self.rep.label()}, n={self.n})"

    __str__ = label


# ---------------------------------------------------------------- decompose


@lru_cache(maxsize=None)
def _model_report(z: ZigzagClass, n: int) -> InvariantReport:
    return full_report(zigzag_model(z, n))


def reconstruct_report(x: ZigzagSum, like: InvariantReport | None = None) -> InvariantReport:
    """Σ mult · report(model) computed from the per-class reports."""
    acc = None
    for z, m in x.items():
        part = _model_report(z, x.n).scale(m)
        acc = part if acc is None else acc + part
    if acc is None:
        acc = full_report(DoubleComplex(x.n, {}))
    return acc


def _multiplicities(rep: InvariantReport) -> dict[ZigzagClass, int]:
    mults: dict[ZigzagClass, int] = {}
    for (k, p, q), b in rep.refined_betti:
        mults[ZigzagClass("S", k, p, q)] = b
    for pages, kind in ((rep.frolicher_col, "S1"), (rep.frolicher_row, "S2")):
        for pg in pages:
            for (p, q), rk in pg.ranks:
                mults[ZigzagClass(kind, pg.r, p, q)] = rk
    return mults


def decompose(a: DoubleComplex, report: InvariantReport | None = None, gate: bool = True) -> ZigzagSum:
    """Zigzag multiplicities of ``a``, certified by rebuilding all invariants."""
    rep = report if report is not None else full_report(a)
    # each zigzag accounts for one refined Betti number or one differential
    total = ZigzagSum(a.n, _multiplicities(rep))
    if gate:
        rebuilt = reconstruct_report(total)
        want, got = rep.tables(), rebuilt.tables()
        bad = [k for k in want if want[k] != got[k]]
        if bad:
            raise ReconstructionError(
                f"zigzag multiplicities of {a.name or 'complex'} do not reproduce: {', '.join(bad)}"
            )
    return total


# ------------------------------------------------------------- ring product

_PRODUCTS: dict = {}
_PRODUCTS_LOCK = threading.Lock()


def _class_product(z: ZigzagClass, nz: int, w: ZigzagClass, nw: int) -> ZigzagSum:
    key = (z, nz, w, nw)
    hit = _PRODUCTS.get(key)
    if hit is not None:
        return hit
    prod = decompose(tensor(zigzag_model(z, nz), zigzag_model(w, nw)))
    with _PRODUCTS_LOCK:
        _PRODUCTS.setdefault(key, prod)
    return _PRODUCTS[key]


def uring_mul(x: ZigzagSum, y: ZigzagSum) -> ZigzagSum:
    """Product in the ring of zigzag classes: ``[A]·[B] = [A ⊗ B]``."""
    acc: dict = {}
    for z, a in x.items():
        for w, b in y.items():
            for u, c in _class_product(z, x.n, w, y.n).items():
                acc[u] = acc.get(u, 0) + a * b * c
    return ZigzagSum(x.n + y.n, acc)


def unit_class() -> ZigzagSum:
    return ZigzagSum.of(ZigzagClass("S", 0, 0, 0), 0)


def c_class() -> ZigzagSum:
    """The class of the dot at (1,1) in grade 2 (point blow-up difference)."""
    return ZigzagSum.of(ZigzagClass("S", 2, 1, 1), 2)


# ----------------------------------------------------------------- formal ring


def _corner_violation(z: ZigzagClass, n: int) -> bool:
    supp = set(z.support)
    return len(supp) > 1 and ((0, 0) in supp or (n, 0) in supp)


def is_in_Uform(x: ZigzagSum) -> tuple[bool, list[str]]:
    """Check the four defining conditions; returns ``(ok, violations)``."""
    n = x.n
    bad = []
    for z, m in x.items():
        if not z.fits(n):
            bad.append(f"U1: {z.label()} leaves [0,{n}]^2")
    for z, m in x.items():
        others = (z.sigma(n), z.tau(), z.sigma(n).tau())
        if any(x.mult(w) != m for w in others):
            bad.append(f"U2: multiplicity of {z.label()} is not symmetric")
            break
    for z, m in x.items():
        if _corner_violation(z, n):
            bad.append(f"U3: {z.label()} is not a dot but meets a corner")
    if n <= 2:
        for z, m in x.items():
            if not z.is_odd:
                bad.append(f"U4: even zigzag {z.label()} in grade {n}")
    return (not bad, bad)


@lru_cache(maxsize=None)
def zigzags_fitting(n: int) -> tuple[ZigzagClass, ...]:
    """Every zigzag class whose support lies in [0,n]^2."""
    found = set()
    for kind in ("S", "S1", "S2"):
        for idx in range(0 if kind == "S" else 1, 2 * n + 2):
            for p in range(n + 1):
                for q in range(n + 1):
                    try:
                        z = ZigzagClass(kind, idx, p, q)
                    except SupportError:
                        continue
                    if z.fits(n) and ZigzagClass.from_support(z.support) == z:
                        found.add(z)
    return tuple(sorted(found, key=ZigzagClass.sort_key))


def _orbit_admissible(orb: SymOrbit) -> bool:
    n = orb.n
    for z in orb.elements:
        if _corner_violation(z, n) or (n <= 2 and not z.is_odd):
            return False
    return True


@lru_cache(maxsize=None)
def sym_basis_Uform(n: int) -> tuple[SymOrbit, ...]:
    """The Sym_Z(n) spanning the degree-n part of the formal universal ring."""
    if n < 0:
        raise ValueError("grade must be nonnegative")
    orbits = {SymOrbit(z, n) for z in zigzags_fitting(n)}
    return tuple(sorted((o for o in orbits if _orbit_admissible(o)), key=SymOrbit.sort_key))


def _lemma_condition(z: ZigzagClass, n: int) -> bool:
    supp = set(z.support)
    if any(p in (0, n) or q in (0, n) for p, q in supp):
        return True
    if len(supp) >= 2 and ((1, 1) in supp or (n - 1, 1) in supp):
        return True
    return n == 4 and z == ZigzagClass("S1", 1, 1, 2)


def _quotient_by_conditions(n: int) -> list[SymOrbit]:
    return [o for o in sym_basis_Uform(n) if any(_lemma_condition(z, n) for z in o.elements)]


def _quotient_by_shift(n: int) -> list[SymOrbit]:
    below = set(sym_basis_Uform(n - 2)) if n >= 2 else set()
    keep = []
    for o in sym_basis_Uform(n):
        try:
            down = SymOrbit(o.rep.shift(-1, -1), n - 2) if n >= 2 else None
        except SupportError:
            down = None
        if down is None or down not in below:
            keep.append(o)
    return keep


def _rank_of_c_image(n: int) -> tuple[int, set]:
    """Rank of Sym(n-2) -> Sym(n), x -> C·x, and the orbits it touches."""
    from .exactfield import row_rank

    if n < 2:
        return 0, set()
    basis = sym_basis_Uform(n)
    index = {o: i for i, o in enumerate(basis)}
    rows = []
    touched = set()
    c = c_class()
    for o in sym_basis_Uform(n - 2):
        prod = uring_mul(c, o.as_sum())
        row = {}
        for orb, m in prod.orbit_coefficients().items():
            if orb not in index:
                raise QuotientCheckError(f"C·{o} leaves the formal ring at {orb}")
            row[index[orb]] = (m, 0)
            touched.add(orb)
        rows.append(row)
    return row_rank(rows, len(basis)), touched


@lru_cache(maxsize=None)
def quotient_basis_mod_C(n: int, cross_check: bool = True) -> tuple[SymOrbit, ...]:
    """Sym_Z(n) projecting to a basis of the degree-n part modulo (C)."""
    if n < 1:
        raise ValueError("needs n >= 1")
    by_cond = _quotient_by_conditions(n)
    if cross_check:
        by_shift = _quotient_by_shift(n)
        if by_cond != by_shift:
            raise QuotientCheckError(f"degree {n}: condition filter and shift criterion disagree")
        rank, touched = _rank_of_c_image(n)
        total = len(sym_basis_Uform(n))
        if total - rank != len(by_cond) or touched & set(by_cond):
            raise QuotientCheckError(
                f"degree {n}: {total} orbits, C-image rank {rank}, combinatorial quotient {len(by_cond)}"
            )
    return tuple(by_cond)


# ------------------------------------------------------------------ blow-ups


def blowup_delta(z: ZigzagSum, ambient_dim: int, codim: int) -> ZigzagSum:
    """``[X~] - [X]`` for the blow-up of ``X`` along a centre of class ``z``."""
    if codim < 2:
        raise ValueError("blow-up centres need codimension >= 2")
    if z.n != ambient_dim - codim:
        raise ValueError(f"centre of grade {z.n} does not have codimension {codim} in dimension {ambient_dim}")
    acc: dict = {}
    for i in range(1, codim):
        for w, m in z.items():
            s = w.shift(i, i)
            acc[s] = acc.get(s, 0) + m
    return ZigzagSum(ambient_dim, acc)


def exceptional_class(codim: int) -> ZigzagSum:
    """Dots (i,i), 1 <= i < codim, in grade ``codim``; multiplying by it is the blow-up delta."""
    return ZigzagSum(codim, {ZigzagClass("S", 2 * i, i, i): 1 for i in range(1, codim)})


# ------------------------------------------------------------- aggregates


@dataclass(frozen=True)
class AggregateCheck:
    name: str
    difference: int  # left side without the factor 2
    zigzag_sum: int
    plain: bool  # difference == zigzag_sum
    doubled: bool  # 2 * difference == zigzag_sum


def aggregate_identities(rep: InvariantReport, x: ZigzagSum) -> tuple[AggregateCheck, AggregateCheck]:
    """Test both normalizations of the two length/multiplicity aggregates."""
    h = sum(v for _, v in rep.hodge)
    bc = sum(v for _, v in rep.bc)
    b = sum(rep.betti)
    long_sum = sum((z.length - 2) * m for z, m in x.items() if z.length >= 2)
    even_sum = sum(m for z, m in x.items() if not z.is_odd)
    first = AggregateCheck("bott-chern minus dolbeault", bc - h, long_sum, bc - h == long_sum, 2 * (bc - h) == long_sum)
    second = AggregateCheck("dolbeault minus betti", h - b, even_sum, h - b == even_sum, 2 * (h - b) == even_sum)
    return first, second


def symmetric_classes(x: Iterable[ZigzagSum]) -> bool:
    return all(is_in_Uform(s)[0] for s in x)
