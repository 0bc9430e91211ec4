"""Bounded double complexes and the operations between them.

A :class:`DoubleComplex` stores a dimension per bidegree ``(p, q)`` and the two
differentials as :class:`~ccx.exactfield.Matrix` blocks: ``del_[(p, q)]`` maps
``(p, q) -> (p+1, q)`` and ``delbar[(p, q)]`` maps ``(p, q) -> (p, q+1)``.
Missing blocks are zero.  The grade ``n`` bounds the support to ``[0, n]^2``
and is what :func:`dual` flips around.

Also here: tensor products with Koszul signs, duals, conjugates, direct sums,
the one-dimensional-per-node zigzag models and the catalog of named examples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from math import comb
from types import MappingProxyType
from typing import Iterable, Mapping

from .exactfield import ONE, Matrix

__all__ = [
    "DoubleComplex",
    "ComplexError",
    "ZigzagClass",
    "SupportError",
    "CatalogEntry",
    "CatalogError",
    "ClassOnlyEntryError",
    "tensor",
    "dual",
    "conjugate",
    "direct_sum",
    "point_complex",
    "zigzag_model",
    "catalog_get",
    "catalog_names",
]


class ComplexError(ValueError):
    """A double complex violates its defining identities or bounds."""


class SupportError(ValueError):
    pass


Bideg = tuple[int, int]


class DoubleComplex:
    """Finite bounded double complex over Q(i).

    ``geometric`` marks complexes that model a compact complex manifold (built
    from structure equations, catalog models and their products/duals); the
    duality-type identities are only expected to hold for those.
    """

    def __init__(
        self,
        n: int,
        dims: Mapping[Bideg, int],
        del_: Mapping[Bideg, Matrix] | None = None,
        delbar: Mapping[Bideg, Matrix] | None = None,
        *,
        real_structure: Mapping[Bideg, Matrix] | None = None,
        name: str = "",
        geometric: bool = False,
        meta: Mapping | None = None,
        check: bool = True,
    ):
        if n < 0:
            raise ComplexError("grade must be nonnegative")
        self.n = n
        clean = {}
        for (p, q), d in dims.items():
            if d < 0:
                raise ComplexError(f"negative dimension at {(p, q)}")
            if d:
                if not (0 <= p <= n and 0 <= q <= n):
                    raise ComplexError(f"bidegree {(p, q)} outside [0,{n}]^2")
                clean[(p, q)] = d
        self._dims = MappingProxyType(dict(sorted(clean.items())))
        self._del = self._blocks(del_ or {}, (1, 0))
        self._delbar = self._blocks(delbar or {}, (0, 1))
        self._real = None
        if real_structure is not None:
            self._real = self._real_blocks(real_structure)
        self.name = name
        self.geometric = geometric
        self.meta = MappingProxyType(dict(meta or {}))
        if check:
            self.check()

    def _blocks(self, blocks, shift):
        out = {}
        for (p, q), m in blocks.items():
            src = self.dim(p, q)
            tgt = self.dim(p + shift[0], q + shift[1])
            if m.shape != (tgt, src):
                raise ComplexError(f"block at {(p, q)} has shape {m.shape}, expected {(tgt, src)}")
            if src and tgt and not m.is_zero():
                out[(p, q)] = m
        return MappingProxyType(out)

    def _real_blocks(self, blocks):
        out = {}
        for (p, q), d in self._dims.items():
            m = blocks.get((p, q))
            if m is None or m.shape != (self.dim(q, p), d):
                raise ComplexError(f"real structure missing or misshapen at {(p, q)}")
            out[(p, q)] = m
        return MappingProxyType(out)

    # -- accessors -----------------------------------------------------------

    def dim(self, p: int, q: int) -> int:
        return self._dims.get((p, q), 0)

    @property
    def dims(self) -> Mapping[Bideg, int]:
        return self._dims

    @property
    def support(self) -> tuple[Bideg, ...]:
        return tuple(self._dims)

    @property
    def real_structure(self):
        return self._real

    def total_dim(self, k: int | None = None) -> int:
        if k is None:
            return sum(self._dims.values())
        return sum(d for (p, q), d in self._dims.items() if p + q == k)

    def del_(self, p: int, q: int) -> Matrix:
        m = self._del.get((p, q))
        return m if m is not None else Matrix.zero(self.dim(p + 1, q), self.dim(p, q))

    def delbar(self, p: int, q: int) -> Matrix:
        m = self._delbar.get((p, q))
        return m if m is not None else Matrix.zero(self.dim(p, q + 1), self.dim(p, q))

    def del_blocks(self) -> Mapping[Bideg, Matrix]:
        return self._del

    def delbar_blocks(self) -> Mapping[Bideg, Matrix]:
        return self._delbar

    # -- validation ----------------------------------------------------------

    def check(self) -> None:
        for (p, q) in self._dims:
            d1 = self.del_(p + 1, q) @ self.del_(p, q)
            if not d1.is_zero():
                raise ComplexError(f"∂∘∂ ≠ 0 at {(p, q)}")
            d2 = self.delbar(p, q + 1) @ self.delbar(p, q)
            if not d2.is_zero():
                raise ComplexError(f"∂̄∘∂̄ ≠ 0 at {(p, q)}")
            mix = self.del_(p, q + 1) @ self.delbar(p, q) + self.delbar(p + 1, q) @ self.del_(p, q)
            if not mix.is_zero():
                raise ComplexError(f"∂∂̄ + ∂̄∂ ≠ 0 at {(p, q)}")

    def check_real_structure(self) -> bool:
        """``conj(∂̄x) = ∂(conj x)`` on every basis vector (antilinear conjugation)."""
        if self._real is None:
            return False
        R = self._real
        for (p, q) in self._dims:
            if self.dim(p, q + 1):
                lhs = R[(p, q + 1)] @ self.delbar(p, q).conjugate()
            else:
                lhs = Matrix.zero(self.dim(q + 1, p), self.dim(p, q))
            rhs = self.del_(q, p) @ R[(p, q)]
            if lhs != rhs:
                return False
        return True

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"DoubleComplex{label}(n={self.n}, dim={self.total_dim()})"

    # -- connected pieces ------------------------------------------------------

    @cached_property
    def components(self) -> tuple["DoubleComplex", ...]:
        """Split into the finest direct summands visible in the chosen basis.

        Two basis vectors share a summand when some differential entry links
        them; every invariant computed here is additive over this splitting.
        """
        offs = {}
        total = 0
        for bd, d in self._dims.items():
            offs[bd] = total
            total += d
        parent = list(range(total))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for blocks, sh in ((self._del, (1, 0)), (self._delbar, (0, 1))):
            for (p, q), m in blocks.items():
                so = offs[(p, q)]
                to = offs[(p + sh[0], q + sh[1])]
                for (i, j), _ in m.items():
                    a, b = find(so + j), find(to + i)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for x in range(total):
            groups.setdefault(find(x), []).append(x)
        if len(groups) <= 1:
            return (self,)
        where = []
        for bd, d in self._dims.items():
            where.extend((bd, i) for i in range(d))
        out = []
        for root in sorted(groups):
            members = groups[root]
            per: dict[Bideg, list[int]] = {}
            for x in members:
                bd, i = where[x]
                per.setdefault(bd, []).append(i)
            out.append(self._restrict(per))
        return tuple(out)

    def _restrict(self, per: dict[Bideg, list[int]]) -> "DoubleComplex":
        dims = {bd: len(ix) for bd, ix in per.items()}
        dels, dbars = {}, {}
        for (p, q), ix in per.items():
            if (p + 1, q) in per and (p, q) in self._del:
                dels[(p, q)] = self._del[(p, q)].submatrix(per[(p + 1, q)], ix)
            if (p, q + 1) in per and (p, q) in self._delbar:
                dbars[(p, q)] = self._delbar[(p, q)].submatrix(per[(p, q + 1)], ix)
        return DoubleComplex(self.n, dims, dels, dbars, geometric=False, check=False)


# ---------------------------------------------------------------- algebra


def point_complex() -> DoubleComplex:
    """The unit: one-dimensional at (0,0), grade 0."""
    return DoubleComplex(0, {(0, 0): 1}, real_structure={(0, 0): Matrix.identity(1)}, name="point", geometric=True)


def _kron(a: Matrix, b: Matrix, sign: int = 1) -> dict:
    bd = b.row_dicts()
    out = {}
    bitems = [((i, j), v) for i, row in enumerate(bd) for j, v in row.items()]
    for (i, j), x in a.items():
        for (k, l), y in bitems:
            v = x * y
            out[(i * b.rows + k, j * b.cols + l)] = v if sign > 0 else -v
    return out


def _tensor_layout(a: DoubleComplex, b: DoubleComplex):
    """Offsets of the blocks A^{pa,qa} ⊗ B^{pb,qb} inside each target bidegree."""
    keys: dict[Bideg, list] = {}
    for (pa, qa), da in a.dims.items():
        for (pb, qb), db in b.dims.items():
            keys.setdefault((pa + pb, qa + qb), []).append(((pa, qa, pb, qb), da * db))
    layout = {}
    for tgt, blocks in keys.items():
        off = 0
        fb = {}
        for key, size in sorted(blocks):
            fb[key] = (off, size)
            off += size
        layout[tgt] = fb
    return layout


def tensor(a: DoubleComplex, b: DoubleComplex) -> DoubleComplex:
    """Bigraded tensor product, ``∂(x⊗y) = ∂x⊗y + (-1)^|x| x⊗∂y``."""
    lay = _tensor_layout(a, b)
    dims = {t: sum(s for _, s in blocks.values()) for t, blocks in lay.items()}

    def build(op_a, op_b, sh):
        out: dict[Bideg, dict] = {}
        for tgt, blocks in lay.items():
            nxt = (tgt[0] + sh[0], tgt[1] + sh[1])
            if nxt not in lay:
                continue
            ent = out.setdefault(tgt, {})
            for (pa, qa, pb, qb), (soff, _) in blocks.items():
                key_a = (pa + sh[0], qa + sh[1], pb, qb)
                if key_a in lay[nxt]:
                    m = op_a(pa, qa)
                    if not m.is_zero():
                        toff = lay[nxt][key_a][0]
                        ident = Matrix.identity(b.dim(pb, qb))
                        for (i, j), v in _kron(m, ident).items():
                            ent[(toff + i, soff + j)] = v
                key_b = (pa, qa, pb + sh[0], qb + sh[1])
                if key_b in lay[nxt]:
                    m = op_b(pb, qb)
                    if not m.is_zero():
                        toff = lay[nxt][key_b][0]
                        ident = Matrix.identity(a.dim(pa, qa))
                        sign = -1 if (pa + qa) % 2 else 1
                        for (i, j), v in _kron(ident, m, sign).items():
                            ent[(toff + i, soff + j)] = v
        return {
            t: Matrix(dims[(t[0] + sh[0], t[1] + sh[1])], dims[t], e) for t, e in out.items() if e
        }

    dels = build(a.del_, b.del_, (1, 0))
    dbars = build(a.delbar, b.delbar, (0, 1))
    real = None
    if a.real_structure is not None and b.real_structure is not None:
        real = {}
        for tgt, blocks in lay.items():
            conj_t = (tgt[1], tgt[0])
            ent = {}
            for (pa, qa, pb, qb), (soff, _) in blocks.items():
                toff = lay[conj_t][(qa, pa, qb, pb)][0]
                for (i, j), v in _kron(a.real_structure[(pa, qa)], b.real_structure[(pb, qb)]).items():
                    ent[(toff + i, soff + j)] = v
            real[tgt] = Matrix(dims[conj_t], dims[tgt], ent)
    name = f"{a.name}*{b.name}" if a.name and b.name else ""
    return DoubleComplex(
        a.n + b.n, dims, dels, dbars, real_structure=real, name=name,
        geometric=a.geometric and b.geometric, check=False,
    )


def dual(a: DoubleComplex) -> DoubleComplex:
    """``(DA)^{p,q} = Hom(A^{n-p,n-q}, C)`` with differential ``(-1)^{p+q+1} φ∘d``."""
    n = a.n
    dims = {(n - p, n - q): d for (p, q), d in a.dims.items()}
    dels, dbars = {}, {}
    for (p, q) in dims:
        sign = -1 if (p + q + 1) % 2 else 1
        src = (n - p - 1, n - q)
        if src in a.del_blocks():
            dels[(p, q)] = a.del_blocks()[src].transpose().scale(sign)
        src = (n - p, n - q - 1)
        if src in a.delbar_blocks():
            dbars[(p, q)] = a.delbar_blocks()[src].transpose().scale(sign)
    real = None
    if a.real_structure is not None:
        # (conj f)(x) = conj(f(conj x)) on dual bases gives conj(R)^T
        real = {(p, q): a.real_structure[(n - q, n - p)].conjugate().transpose() for (p, q) in dims}
    return DoubleComplex(
        n, dims, dels, dbars, real_structure=real, name=f"D({a.name})" if a.name else "",
        geometric=a.geometric, check=False,
    )


def conjugate(a: DoubleComplex) -> DoubleComplex:
    """Transpose the bigrading and swap the roles of ∂ and ∂̄."""
    dims = {(q, p): d for (p, q), d in a.dims.items()}
    dels = {(q, p): m.conjugate() for (p, q), m in a.delbar_blocks().items()}
    dbars = {(q, p): m.conjugate() for (p, q), m in a.del_blocks().items()}
    real = None
    if a.real_structure is not None:
        real = {(q, p): m.conjugate() for (p, q), m in a.real_structure.items()}
    return DoubleComplex(
        a.n, dims, dels, dbars, real_structure=real, name=f"conj({a.name})" if a.name else "",
        geometric=a.geometric, check=False,
    )


def direct_sum(*cs: DoubleComplex, name: str = "", geometric: bool | None = None) -> DoubleComplex:
    if not cs:
        raise ComplexError("direct sum of nothing")
    n = cs[0].n
    if any(c.n != n for c in cs):
        raise ComplexError("direct summands must share the grade")
    dims: dict[Bideg, int] = {}
    offs = []
    for c in cs:
        o = {}
        for bd, d in c.dims.items():
            o[bd] = dims.get(bd, 0)
            dims[bd] = o[bd] + d
        offs.append(o)

    def gather(get, sh):
        out: dict[Bideg, dict] = {}
        for c, o in zip(cs, offs):
            for (p, q), m in get(c).items():
                t = (p + sh[0], q + sh[1])
                ent = out.setdefault((p, q), {})
                for (i, j), v in m.items():
                    ent[(o[t] + i, o[(p, q)] + j)] = v
        return {bd: Matrix(dims[(bd[0] + sh[0], bd[1] + sh[1])], dims[bd], e) for bd, e in out.items()}

    real = None
    if all(c.real_structure is not None for c in cs):
        ent: dict[Bideg, dict] = {}
        for c, o in zip(cs, offs):
            for (p, q), m in c.real_structure.items():
                e = ent.setdefault((p, q), {})
                for (i, j), v in m.items():
                    e[(o[(q, p)] + i, o[(p, q)] + j)] = v
        real = {bd: Matrix(dims[(bd[1], bd[0])], dims[bd], e) for bd, e in ent.items()}
    geo = all(c.geometric for c in cs) if geometric is None else geometric
    return DoubleComplex(
        n, dims, gather(lambda c: c.del_blocks(), (1, 0)), gather(lambda c: c.delbar_blocks(), (0, 1)),
        real_structure=real, name=name, geometric=geo, check=False,
    )


# -------------------------------------------------------------- zigzags

_LABEL = re.compile(r"^\s*(S|S1|S2)\[\s*(\d+)\s*;\s*(\d+)\s*,\s*(\d+)\s*\]\s*$")


@dataclass(frozen=True)
class ZigzagClass:
    """Isomorphism class of a zigzag.

    ``kind`` is ``"S"`` for odd zigzags ``S_k^{p,q}`` (``index`` = k, the degree
    carrying the one de Rham class), ``"S1"`` for even zigzags seen by the
    column spectral sequence as a nonzero ``d_r: E_r^{p,q} -> E_r^{p+r,q-r+1}``
    and ``"S2"`` for even zigzags seen only by the row spectral sequence, as a
    nonzero ``d_r: (p,q) -> (p-r+1, q+r)``.  For the even kinds ``index`` = r.
    """

    kind: str
    index: int
    p: int
    q: int

    def __post_init__(self):
        if self.kind not in ("S", "S1", "S2"):
            raise ValueError(f"unknown zigzag kind {self.kind!r}")
        if self.kind != "S" and self.index < 1:
            raise ValueError("even zigzags need r >= 1")
        self.support  # validates the shape

    @cached_property
    def support(self) -> tuple[Bideg, ...]:
        k, p, q = self.index, self.p, self.q
        if self.kind == "S":
            a, b = sorted((p, k - q))
            nodes = [(c, k - c) for c in range(a, b + 1)]
            if p + q < k:
                nodes += [(c, k + 1 - c) for c in range(a + 1, b + 1)]
            elif p + q > k:
                nodes += [(c, k - 1 - c) for c in range(a, b)]
        elif self.kind == "S1":
            low = p + q
            nodes = [(c, low - c) for c in range(p, p + k)]
            nodes += [(c, low + 1 - c) for c in range(p + 1, p + k + 1)]
        else:
            low = p + q
            nodes = [(c, low - c) for c in range(p - k + 1, p + 1)]
            nodes += [(c, low + 1 - c) for c in range(p - k + 1, p + 1)]
        if any(x < 0 or y < 0 for x, y in nodes):
            raise SupportError(f"{self.label()} has a node with negative coordinate")
        return tuple(sorted(nodes))

    @property
    def length(self) -> int:
        return len(self.support)

    @property
    def is_odd(self) -> bool:
        return self.kind == "S"

    @property
    def is_dot(self) -> bool:
        return self.length == 1

    def max_coord(self) -> int:
        return max(max(x, y) for x, y in self.support)

    def fits(self, n: int) -> bool:
        return all(0 <= x <= n and 0 <= y <= n for x, y in self.support)

    @classmethod
    def from_support(cls, nodes: Iterable[Bideg]) -> "ZigzagClass":
        nodes = sorted(set(nodes))
        if not nodes:
            raise SupportError("empty support")
        if len(nodes) == 1:
            p, q = nodes[0]
            return cls("S", p + q, p, q)
        degs = sorted({p + q for p, q in nodes})
        if len(degs) != 2 or degs[1] != degs[0] + 1:
            raise SupportError(f"{nodes} is not a zigzag support")
        k = degs[0]
        low = sorted(p for p, q in nodes if p + q == k)
        high = sorted(p for p, q in nodes if p + q == k + 1)
        if low != list(range(low[0], low[-1] + 1)) or high != list(range(high[0], high[-1] + 1)):
            raise SupportError(f"{nodes} is not connected")
        a, b = low[0], low[-1]
        if high == list(range(a + 1, b + 1)):
            return cls("S", k, a, k - b)
        if high == list(range(a, b + 2)):
            return cls("S", k + 1, b + 1, k + 1 - a)
        if high == list(range(a + 1, b + 2)):
            return cls("S1", b - a + 1, a, k - a)
        if high == list(range(a, b + 1)):
            return cls("S2", b - a + 1, b, k - b)
        raise SupportError(f"{nodes} is not a zigzag support")

    def sigma(self, n: int) -> "ZigzagClass":
        """Serre flip ``(p,q) -> (n-p, n-q)``."""
        return ZigzagClass.from_support((n - p, n - q) for p, q in self.support)

    def tau(self) -> "ZigzagClass":
        """Conjugation flip ``(p,q) -> (q,p)``."""
        return ZigzagClass.from_support((q, p) for p, q in self.support)

    def shift(self, dp: int, dq: int) -> "ZigzagClass":
        return ZigzagClass.from_support((p + dp, q + dq) for p, q in self.support)

    def label(self) -> str:
        return f"{self.kind}[{self.index}; {self.p},{self.q}]"

    @classmethod
    def parse(cls, text: str) -> "ZigzagClass":
        m = _LABEL.match(text)
        if not m:
            raise ValueError(f"not a zigzag label: {text!r}")
        return cls(m.group(1), int(m.group(2)), int(m.group(3)), int(m.group(4)))

    def sort_key(self):
        return (self.length, ("S", "S1", "S2").index(self.kind), self.index, self.p, self.q)

    def __str__(self):
        return self.label()


def zigzag_model(z: ZigzagClass, n: int) -> DoubleComplex:
    """One-dimensional spaces on the support of ``z`` with identity arrows."""
    if not z.fits(n):
        raise SupportError(f"{z.label()} does not fit in [0,{n}]^2")
    nodes = set(z.support)
    dims = {bd: 1 for bd in nodes}
    dels = {(p, q): Matrix(1, 1, {(0, 0): ONE}) for p, q in nodes if (p + 1, q) in nodes}
    dbars = {(p, q): Matrix(1, 1, {(0, 0): ONE}) for p, q in nodes if (p, q + 1) in nodes}
    return DoubleComplex(n, dims, dels, dbars, name=z.label(), check=True)


# ---------------------------------------------------------------- catalog


class CatalogError(KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "catalog error"


class ClassOnlyEntryError(TypeError):
    """The entry is known only through its zigzag class; there is no complex."""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str  # "equations" | "complex" | "class"
    provenance: str  # PAPER / TRIVIAL / DERIVED
    description: str
    payload: object

    def complex(self) -> DoubleComplex:
        if self.kind == "equations":
            from .liealg import build_double_complex

            return build_double_complex(self.payload, name=self.name)
        if self.kind == "complex":
            return self.payload()
        raise ClassOnlyEntryError(f"{self.name} has no finite double complex in the catalog, only a zigzag class")

    def zigzag_class(self):
        """The class in the universal ring (decomposing the complex if needed)."""
        if self.kind == "class":
            return self.payload()
        from .zigzag import decompose

        return decompose(self.complex())

    @property
    def grade(self) -> int:
        if self.kind == "equations":
            return self.payload.n
        return self.zigzag_class().n if self.kind == "class" else self.complex().n


def _dots_model(n: int, points: Iterable[Bideg], name: str) -> DoubleComplex:
    parts = [zigzag_model(ZigzagClass("S", p + q, p, q), n) for p, q in points]
    c = direct_sum(*parts, name=name, geometric=True)
    real = {bd: Matrix.identity(d) if bd[0] == bd[1] else None for bd, d in c.dims.items()}
    if all(v is not None for v in real.values()):
        c = DoubleComplex(n, c.dims, c.del_blocks(), c.delbar_blocks(), real_structure=real,
                          name=name, geometric=True, check=False)
    return c


def _cpn(n: int) -> DoubleComplex:
    return _dots_model(n, [(p, p) for p in range(n + 1)], f"cpn:{n}")


def _torus_equations(n: int):
    from .liealg import StructureEquations

    return StructureEquations(n, tuple(() for _ in range(n)), f"torus:{n}")


def _iwasawa():
    from .liealg import parse_structure_equations

    return parse_structure_equations("n = 3\nd phi3 = w(1,2)\n", "iwasawa")


def _threefold_n():
    from .liealg import parse_structure_equations

    return parse_structure_equations("n = 3\nd phi3 = w(1,2) - w(1,-2)\n", "threefold-N")


def xn_equations(m: int):
    """``d phi_n = -Σ phi_{2l-1}∧phi_{2l} + i Σ phi_{2l-1}∧phibar_{2l-1}``, n = 2m+1."""
    from .liealg import StructureEquations

    if m < 1:
        raise CatalogError("xn:<m> needs m >= 1")
    n = 2 * m + 1
    terms = []
    for ell in range(1, m + 1):
        terms.append((-1, 2 * ell - 1, 2 * ell))
        terms.append(("i", 2 * ell - 1, -(2 * ell - 1)))
    return StructureEquations.from_terms(n, {n: terms}, f"xn:{m}")


def _hopf() -> DoubleComplex:
    # dots at the corners plus the length-three zigzag through (0,1),(1,0)
    # and its Serre dual through (1,1)
    parts = [
        zigzag_model(ZigzagClass("S", 0, 0, 0), 2),
        zigzag_model(ZigzagClass("S", 4, 2, 2), 2),
        zigzag_model(ZigzagClass("S", 1, 0, 0), 2),
        zigzag_model(ZigzagClass("S", 3, 2, 2), 2),
    ]
    return direct_sum(*parts, name="hopf", geometric=True)


def _ot_class(n: int):
    from .zigzag import SymOrbit, ZigzagSum

    if n < 2:
        raise CatalogError("ot:<n> needs n >= 2")
    total = ZigzagSum(n, {})
    for k in range(n):
        total = total + SymOrbit(ZigzagClass("S", k, 0, 0), n).as_sum().scale(comb(n - 1, k))
    return total


def catalog_names() -> list[str]:
    return ["point", "cp1", "cp2", "cpn:<n>", "torus:<n>", "iwasawa", "threefold-N", "xn:<m>", "hopf", "ot:<n>"]


def _param(name: str, prefix: str) -> int:
    tail = name[len(prefix):]
    if not tail.isdigit():
        raise CatalogError(f"catalog entry {name!r} needs an integer parameter")
    return int(tail)


def catalog_get(name: str) -> CatalogEntry:
    if name == "point":
        return CatalogEntry(name, "complex", "TRIVIAL", "a point", point_complex)
    if name in ("cp1", "cp2") or name.startswith("cpn:"):
        k = int(name[2]) if name in ("cp1", "cp2") else _param(name, "cpn:")
        if k < 0:
            raise CatalogError("cpn:<n> needs n >= 0")
        return CatalogEntry(name, "complex", "TRIVIAL", f"complex projective {k}-space (dots on the diagonal)",
                            lambda: _cpn(k))
    if name.startswith("torus:"):
        k = _param(name, "torus:")
        return CatalogEntry(name, "equations", "TRIVIAL", f"complex torus of dimension {k}", _torus_equations(k))
    if name == "iwasawa":
        return CatalogEntry(name, "equations", "PAPER", "Iwasawa manifold", _iwasawa())
    if name == "threefold-N":
        return CatalogEntry(name, "equations", "PAPER", "nilmanifold threefold with b_3^{1,1} = 1", _threefold_n())
    if name.startswith("xn:"):
        m = _param(name, "xn:")
        return CatalogEntry(name, "equations", "PAPER", f"nilmanifold family member of dimension {2 * m + 1}",
                            xn_equations(m))
    if name == "hopf":
        return CatalogEntry(name, "complex", "DERIVED", "Hopf surface (minimal zigzag model)", _hopf)
    if name.startswith("ot:"):
        k = _param(name, "ot:")
        if k < 2:
            raise CatalogError("ot:<n> needs n >= 2")
        return CatalogEntry(name, "class", "PAPER", f"OT manifold of dimension {k} (class only)", lambda: _ot_class(k))
    raise CatalogError(f"unknown catalog entry {name!r}; known: {', '.join(catalog_names())}")
