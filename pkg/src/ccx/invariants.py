"""Cohomological invariants of a double complex.

Everything is computed exactly, one connected summand at a time (see
:attr:`ccx.dcalg.DoubleComplex.components`), and summed; all invariants here
are additive under direct sums.

The Frölicher spectral sequence of the column filtration uses the subquotients

    Z_r^p = {x ∈ F^p Tot^k : dx ∈ F^{p+r}},
    E_r^{p,q} = Z_r^p / (d Z_{r-1}^{p-r+1} + Z_{r-1}^{p+1}),

materialized as subspaces of the total complex.  :func:`frolicher_ranks` gives
the same pages from ranks alone and serves as an independent check.  Refined
Betti numbers come from the two Hodge filtrations on each H^k, realized
inside one fixed complement of the coboundaries.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from functools import cached_property
from math import lcm
from typing import Mapping

from .dcalg import DoubleComplex, conjugate
from .exactfield import intersect_rows, null_rows, reduce_rows, row_echelon, row_rank

__all__ = [
    "InvariantReport",
    "EngineConsistencyError",
    "dolbeault",
    "dolbeault_row",
    "bott_chern",
    "aeppli",
    "de_rham",
    "frolicher_page",
    "frolicher_ranks",
    "refined_betti",
    "full_report",
    "SCHEMA",
]

SCHEMA = "ccx.report/1"

Table = Mapping[tuple[int, int], int]


class EngineConsistencyError(AssertionError):
    """An identity that must hold for every double complex failed."""


def _add(acc: dict, key, v: int):
    if v:
        acc[key] = acc.get(key, 0) + v
        if not acc[key]:
            del acc[key]


def _gi_scale(v, s):
    return (v[0] * s, v[1] * s)


class _Piece:
    """Integer data for one connected summand and the linear algebra on it."""

    def __init__(self, c: DoubleComplex):
        self.c = c
        self.n = c.n
        self.dims = dict(c.dims)
        degs = sorted({p + q for p, q in self.dims})
        self.degrees = degs
        self.pmin = min(p for p, _ in self.dims)
        # total complex layout: per degree, coordinates sorted by column p
        self.layout: dict[int, dict] = {}
        self.colp: dict[int, list[int]] = {}
        for k in range(degs[0] - 1, degs[-1] + 2):
            offs = {}
            cols = []
            for (p, q), d in sorted(self.dims.items()):
                if p + q == k:
                    offs[(p, q)] = len(cols)
                    cols.extend([p] * d)
            self.layout[k] = offs
            self.colp[k] = cols
        # global integer scaling of all blocks (keeps images honest)
        den = 1
        for blocks in (c.del_blocks(), c.delbar_blocks()):
            for m in blocks.values():
                for _, v in m.items():
                    den = lcm(den, v.re.denominator, v.im.denominator)
        self.scale = den

        def to_int(m):
            return {(i, j): (int(v.re * den), int(v.im * den)) for (i, j), v in m.items()}

        self.del_int = {bd: to_int(m) for bd, m in c.del_blocks().items()}
        self.dbar_int = {bd: to_int(m) for bd, m in c.delbar_blocks().items()}
        self.d_rows: dict[int, list[dict]] = {}
        self.d_cols: dict[int, list[dict]] = {}
        for k in self.layout:
            if k + 1 not in self.layout:
                continue
            rows = [dict() for _ in self.colp[k + 1]]
            cols = [dict() for _ in self.colp[k]]
            for (p, q), so in self.layout[k].items():
                for blocks, tgt in ((self.del_int, (p + 1, q)), (self.dbar_int, (p, q + 1))):
                    ent = blocks.get((p, q))
                    if not ent:
                        continue
                    to = self.layout[k + 1][tgt]
                    for (i, j), v in ent.items():
                        rows[to + i][so + j] = v
                        cols[so + j][to + i] = v
            self.d_rows[k] = rows
            self.d_cols[k] = cols

    # -- blockwise ranks -----------------------------------------------------

    @staticmethod
    def _rows_of(block: dict, nrows: int) -> list[dict]:
        rows = [dict() for _ in range(nrows)]
        for (i, j), v in block.items():
            rows[i][j] = v
        return rows

    def rank_block(self, blocks, bd, shift) -> int:
        ent = blocks.get(bd)
        if not ent:
            return 0
        tgt = (bd[0] + shift[0], bd[1] + shift[1])
        return row_rank(self._rows_of(ent, self.dims[tgt]), self.dims[bd])

    def rank_del(self, p, q):
        return self.rank_block(self.del_int, (p, q), (1, 0))

    def rank_dbar(self, p, q):
        return self.rank_block(self.dbar_int, (p, q), (0, 1))

    def rank_stack(self, p, q) -> int:
        """rank of x -> (∂x, ∂̄x) on A^{p,q}."""
        d = self.dims.get((p, q), 0)
        if not d:
            return 0
        rows = []
        for blocks, tgt in ((self.del_int, (p + 1, q)), (self.dbar_int, (p, q + 1))):
            ent = blocks.get((p, q))
            if ent:
                rows.extend(self._rows_of(ent, self.dims[tgt]))
        return row_rank(rows, d)

    def rank_image_sum(self, p, q) -> int:
        """dim(im ∂ + im ∂̄) inside A^{p,q}."""
        gens = []
        for blocks, src in ((self.del_int, (p - 1, q)), (self.dbar_int, (p, q - 1))):
            ent = blocks.get(src)
            if ent:
                cols = [dict() for _ in range(self.dims[src])]
                for (i, j), v in ent.items():
                    cols[j][i] = v
                gens.extend(cols)
        return row_rank(gens, self.dims.get((p, q), 0))

    def rank_ddbar(self, p, q) -> int:
        """rank of ∂∂̄ : A^{p,q} -> A^{p+1,q+1}."""
        first = self.dbar_int.get((p, q))
        second = self.del_int.get((p, q + 1))
        if not first or not second:
            return 0
        mid = [dict() for _ in range(self.dims[(p, q)])]
        for (i, j), v in first.items():
            mid[j][i] = v
        srows = self._rows_of(second, self.dims[(p + 1, q + 1)])
        out_cols = []
        for col in mid:
            acc: dict = {}
            for t, row in enumerate(srows):
                s0 = s1 = 0
                for i, a in row.items():
                    b = col.get(i)
                    if b:
                        s0 += a[0] * b[0] - a[1] * b[1]
                        s1 += a[0] * b[1] + a[1] * b[0]
                if s0 or s1:
                    acc[t] = (s0, s1)
            out_cols.append(acc)
        return row_rank(out_cols, self.dims[(p + 1, q + 1)])

    # -- total complex -------------------------------------------------------

    def tot_dim(self, k) -> int:
        return len(self.colp.get(k, ()))

    def rank_d(self, k) -> int:
        if k not in self.d_rows or not self.tot_dim(k) or not self.tot_dim(k + 1):
            return 0
        return row_rank(self.d_rows[k], self.tot_dim(k))

    def apply_d(self, k, vectors) -> list[dict]:
        cols = self.d_cols.get(k)
        out = []
        for v in vectors:
            acc: dict = {}
            if cols is not None:
                for c, x in v.items():
                    for t, a in cols[c].items():
                        o = acc.get(t, (0, 0))
                        acc[t] = (o[0] + a[0] * x[0] - a[1] * x[1], o[1] + a[0] * x[1] + a[1] * x[0])
            out.append({t: w for t, w in acc.items() if w[0] or w[1]})
        return out

    def _restricted_rows(self, k, src_ok, tgt_ok):
        rows = self.d_rows.get(k)
        if rows is None:
            return [], []
        src = [c for c, p in enumerate(self.colp[k]) if src_ok(c, p)]
        local = {c: i for i, c in enumerate(src)}
        out = []
        tcol = self.colp[k + 1]
        for t, row in enumerate(rows):
            if not tgt_ok(t, tcol[t]):
                continue
            r = {local[c]: v for c, v in row.items() if c in local}
            if r:
                out.append(r)
        return src, out

    @cached_property
    def _zcache(self):
        return {}

    @cached_property
    def _zdims(self):
        return {}

    @cached_property
    def _dzcache(self):
        return {}

    def _z_key(self, k, p, r):
        """Normalize ``(k, p, r)`` so that equal subspaces share one key."""
        cols = self.colp.get(k + 1) or [0]
        lo = max(p, self.pmin)
        hi = None if r is None else p + r - 1
        if hi is not None and hi >= max(cols):
            hi = None
        return k, lo, hi

    def z_space(self, k: int, p: int, r: int | None) -> list:
        """Echelon rows of Z_r^p in Tot^k (``r=None``: cocycles in F^p)."""
        key = self._z_key(k, p, r)
        hit = self._zcache.get(key)
        if hit is not None:
            return hit
        _, lo, hi = key
        src, rows = self._restricted_rows(
            k, lambda c, cp: cp >= lo, lambda t, tp: tp >= lo and (hi is None or tp <= hi)
        )
        null = null_rows(rows, len(src))
        vecs = [{src[i]: v for i, v in r_.items()} for r_ in null]
        ech = row_echelon(vecs, self.tot_dim(k))
        self._zcache[key] = ech
        return ech

    def z_dim(self, k, p, r) -> int:
        """dim Z_r^p in Tot^k by rank only."""
        key = self._z_key(k, p, r)
        hit = self._zdims.get(key)
        if hit is not None:
            return hit
        _, lo, hi = key
        src, rows = self._restricted_rows(
            k, lambda c, cp: cp >= lo, lambda t, tp: tp >= lo and (hi is None or tp <= hi)
        )
        val = len(src) - row_rank(rows, len(src)) if src else 0
        self._zdims[key] = val
        return val

    def d_image(self, k, ech) -> list[dict]:
        """d applied to a Tot^k subspace, as spanning rows in Tot^{k+1}."""
        return self.apply_d(k, [r for _, r in ech])

    def d_of_z(self, k, p, r) -> list[dict]:
        key = self._z_key(k, p, r)
        hit = self._dzcache.get(key)
        if hit is None:
            hit = self.d_image(k, self.z_space(k, p, r))
            self._dzcache[key] = hit
        return hit

    def _span_dim(self, k, *parts) -> int:
        rows = []
        for part in parts:
            rows.extend(part)
        return row_rank(rows, self.tot_dim(k))

    def column_page(self, r: int):
        """``(e_r, rank d_r)`` for the column filtration, by subspaces."""
        e: dict = {}
        rk: dict = {}
        for (p, q) in self._grid():
            k = p + q
            if not self.tot_dim(k):
                continue
            zr = self.z_space(k, p, r)
            if not zr:
                continue
            num = len(zr)
            den_rows = [row for _, row in self.z_space(k, p + 1, r - 1)]
            if self.tot_dim(k - 1):
                den_rows += self.d_of_z(k - 1, p - r + 1, r - 1)
            _add(e, (p, q), num - self._span_dim(k, den_rows))
            # rank of d_r : E_r^{p,q} -> E_r^{p+r, q-r+1}
            if self.tot_dim(k + 1):
                tail = [row for _, row in self.z_space(k + 1, p + r + 1, r - 1)]
                big = self._span_dim(k + 1, self.d_of_z(k, p, r), tail)
                small = self._span_dim(k + 1, self.d_of_z(k, p + 1, r - 1), tail)
                _add(rk, (p, q), big - small)
        return e, rk

    def page(self, r: int, method: str):
        key = (r, method)
        hit = self._pages.get(key)
        if hit is None:
            hit = self.column_page(r) if method == "subspace" else self.column_page_ranks(r)
            self._pages[key] = hit
        return hit

    @cached_property
    def _pages(self):
        return {}

    def column_page_ranks(self, r: int):
        """Same page as :meth:`column_page` from ranks of restricted blocks."""
        e: dict = {}
        rk: dict = {}
        for (p, q) in self._grid():
            k = p + q
            if not self.tot_dim(k):
                continue
            val = (
                self.z_dim(k, p, r)
                - self.z_dim(k, p + 1, r - 1)
                - self.z_dim(k - 1, p - r + 1, r - 1)
                + self.z_dim(k - 1, p - r + 1, r)
            )
            _add(e, (p, q), val)
            val = self.z_dim(k, p, r) - self.z_dim(k, p, r + 1) - self.z_dim(k, p + 1, r - 1) + self.z_dim(k, p + 1, r)
            _add(rk, (p, q), val)
        return e, rk

    def _grid(self):
        # e_r and rank d_r vanish off the support
        return sorted(self.dims)

    # -- refined Betti numbers -------------------------------------------------

    @cached_property
    def refined(self):
        """``(b_k^{p,q}, dim F^p H^k)`` tables."""
        out: dict = {}
        fdims: dict = {}
        n = self.n
        for k in range(0, 2 * n + 1):
            dim_k = self.tot_dim(k)
            if not dim_k:
                continue
            cocycles = self.z_space(k, 0, None)
            if not cocycles:
                continue
            bnd = row_echelon(self.apply_d(k - 1, [{c: (1, 0)} for c in range(self.tot_dim(k - 1))]), dim_k) \
                if self.tot_dim(k - 1) else []
            if len(cocycles) == len(bnd):
                continue
            colp = self.colp[k]

            def filt(pred):
                src, rows = self._restricted_rows(k, lambda c, cp: pred(cp), lambda t, tp: True)
                null = null_rows(rows, len(src))
                vecs = [{src[i]: v for i, v in r_.items()} for r_ in null]
                nf = [v for v in reduce_rows(vecs, bnd) if v]
                return [r_ for _, r_ in row_echelon(nf, dim_k)]

            lo = min(colp)
            hi = max(colp)
            ps = range(lo, hi + 2)
            qs = range(k - hi, k - lo + 2)
            F = {p: filt(lambda cp, p=p: cp >= p) for p in ps}
            Fb = {q: filt(lambda cp, q=q: k - cp >= q) for q in qs}
            for p in range(0, n + 1):
                _add(fdims, (k, p), len(F[max(p, lo)]) if p <= hi else 0)
            inter = {}

            def cap(p, q):
                key = (p, q)
                if key not in inter:
                    fp = F[p] if p in F else []
                    fq = Fb[q] if q in Fb else []
                    inter[key] = intersect_rows(fp, fq, dim_k) if fp and fq else []
                return inter[key]

            for p in ps[:-1]:
                for q in qs[:-1]:
                    top = cap(p, q)
                    if not top:
                        continue
                    below = row_rank(cap(p + 1, q) + cap(p, q + 1), dim_k)
                    _add(out, (k, p, q), row_rank(top, dim_k) - below)
        return out, fdims


_PIECES: dict = {}
_PIECES_LOCK = threading.Lock()


def _content_key(c: DoubleComplex):
    def blocks(bs):
        return tuple(sorted((bd, tuple(sorted((ij, (v.re, v.im)) for ij, v in m.items()))) for bd, m in bs.items()))

    return (c.n, tuple(sorted(c.dims.items())), blocks(c.del_blocks()), blocks(c.delbar_blocks()))


def _pieces(a: DoubleComplex) -> list[tuple[_Piece, int]]:
    """Distinct summands of ``a`` with their multiplicities.

    Summands with identical matrices share one :class:`_Piece`, also across
    complexes, so repeated blocks are only ever computed once.
    """
    got = a.__dict__.get("_ccx_pieces")
    if got is not None:
        return got
    counts: dict = {}
    for c in a.components:
        key = _content_key(c)
        if key in counts:
            counts[key][1] += 1
            continue
        piece = _PIECES.get(key)
        if piece is None:
            piece = _Piece(c)
            with _PIECES_LOCK:
                piece = _PIECES.setdefault(key, piece)
        counts[key] = [piece, 1]
    got = [(pc, m) for pc, m in counts.values()]
    a.__dict__["_ccx_pieces"] = got
    return got


# ------------------------------------------------------------ public tables


def dolbeault(a: DoubleComplex) -> dict:
    """h_∂̄^{p,q}: columnwise ∂̄-cohomology."""
    out: dict = {}
    for pc, m in _pieces(a):
        for (p, q), d in pc.dims.items():
            _add(out, (p, q), m * (d - pc.rank_dbar(p, q) - pc.rank_dbar(p, q - 1)))
    return out


def dolbeault_row(a: DoubleComplex) -> dict:
    """h_∂^{p,q}: rowwise ∂-cohomology."""
    out: dict = {}
    for pc, m in _pieces(a):
        for (p, q), d in pc.dims.items():
            _add(out, (p, q), m * (d - pc.rank_del(p, q) - pc.rank_del(p - 1, q)))
    return out


def bott_chern(a: DoubleComplex) -> dict:
    out: dict = {}
    for pc, m in _pieces(a):
        for (p, q), d in pc.dims.items():
            _add(out, (p, q), m * (d - pc.rank_stack(p, q) - pc.rank_ddbar(p - 1, q - 1)))
    return out


def aeppli(a: DoubleComplex) -> dict:
    out: dict = {}
    for pc, m in _pieces(a):
        for (p, q), d in pc.dims.items():
            _add(out, (p, q), m * (d - pc.rank_ddbar(p, q) - pc.rank_image_sum(p, q)))
    return out


def de_rham(a: DoubleComplex) -> tuple[int, ...]:
    b = [0] * (2 * a.n + 1)
    for pc, m in _pieces(a):
        for k in range(2 * a.n + 1):
            b[k] += m * (pc.tot_dim(k) - pc.rank_d(k) - pc.rank_d(k - 1))
    return tuple(b)


def _column_pages(a: DoubleComplex, rmax: int, method: str):
    pages = []
    for r in range(1, rmax + 1):
        e: dict = {}
        rk: dict = {}
        for pc, m in _pieces(a):
            pe, prk = pc.page(r, method)
            for key, v in pe.items():
                _add(e, key, m * v)
            for key, v in prk.items():
                _add(rk, key, m * v)
        pages.append((e, rk))
    return pages


def _transpose(t: dict) -> dict:
    return {(q, p): v for (p, q), v in t.items()}


def frolicher_page(a: DoubleComplex, r: int, orientation: str = "column", method: str = "subspace"):
    """``(e_r^{p,q}, rank d_r^{p,q})`` of the column or row spectral sequence.

    Row differentials are indexed by their source: ``d_r: (p,q) -> (p-r+1, q+r)``.
    """
    if r < 1:
        raise ValueError("pages start at r = 1")
    if orientation == "column":
        return _column_pages(a, r, method)[-1]
    if orientation == "row":
        e, rk = _column_pages(conjugate(a), r, method)[-1]
        return _transpose(e), _transpose(rk)
    raise ValueError("orientation must be 'column' or 'row'")


def frolicher_ranks(a: DoubleComplex, r: int, orientation: str = "column"):
    """Rank-only evaluation of the same page; agrees with :func:`frolicher_page`."""
    return frolicher_page(a, r, orientation, method="ranks")


def refined_betti(a: DoubleComplex) -> dict:
    """b_k^{p,q} keyed by ``(k, p, q)``."""
    out: dict = {}
    for pc, m in _pieces(a):
        for key, v in pc.refined[0].items():
            _add(out, key, m * v)
    return out


def _hodge_filtration_dims(a: DoubleComplex) -> dict:
    out: dict = {}
    for pc, m in _pieces(a):
        for key, v in pc.refined[1].items():
            _add(out, key, m * v)
    return out


# ------------------------------------------------------------------ report


def _freeze(t: Mapping) -> tuple:
    return tuple(sorted((k, v) for k, v in t.items() if v))


@dataclass(frozen=True)
class SpectralPage:
    r: int
    dims: tuple  # ((p, q), e) nonzero entries
    ranks: tuple  # ((p, q), rank d_r^{p,q}) nonzero entries

    def e(self, p, q) -> int:
        return dict(self.dims).get((p, q), 0)

    def rank(self, p, q) -> int:
        return dict(self.ranks).get((p, q), 0)


@dataclass(frozen=True)
class InvariantReport:
    """All dimension tables of one double complex (nonzero entries only)."""

    n: int
    hodge: tuple
    hodge_row: tuple
    bc: tuple
    aeppli: tuple
    betti: tuple
    frolicher_col: tuple  # SpectralPage, r = 1..r_cap
    frolicher_row: tuple
    refined_betti: tuple  # ((k, p, q), b)
    r_max_col: int = 1
    r_max_row: int = 1
    name: str = field(default="", compare=False)

    # -- lookups
    def h(self, p, q) -> int:
        return dict(self.hodge).get((p, q), 0)

    def b(self, k, p, q) -> int:
        return dict(self.refined_betti).get((k, p, q), 0)

    def table(self, field_name: str) -> dict:
        return dict(getattr(self, field_name))

    def hodge_totals(self) -> tuple[int, ...]:
        out = [0] * (2 * self.n + 1)
        for (p, q), v in self.hodge:
            out[p + q] += v
        return tuple(out)

    def tables(self) -> dict:
        """Everything as plain comparable data (pages padded to a common length)."""
        return {
            "hodge": self.hodge,
            "hodge_row": self.hodge_row,
            "bc": self.bc,
            "aeppli": self.aeppli,
            "betti": self.betti,
            "refined_betti": self.refined_betti,
            "frolicher_col": tuple((p.dims, p.ranks) for p in self.frolicher_col),
            "frolicher_row": tuple((p.dims, p.ranks) for p in self.frolicher_row),
        }

    def to_dict(self) -> dict:
        def grid(t):
            return [[p, q, v] for (p, q), v in t]

        return {
            "schema": SCHEMA,
            "name": self.name,
            "n": self.n,
            "betti": list(self.betti),
            "hodge": grid(self.hodge),
            "hodge_row": grid(self.hodge_row),
            "bott_chern": grid(self.bc),
            "aeppli": grid(self.aeppli),
            "refined_betti": [[k, p, q, v] for (k, p, q), v in self.refined_betti],
            "frolicher_column": {
                "r_max": self.r_max_col,
                "pages": [{"r": pg.r, "e": grid(pg.dims), "rank_d": grid(pg.ranks)} for pg in self.frolicher_col],
            },
            "frolicher_row": {
                "r_max": self.r_max_row,
                "pages": [{"r": pg.r, "e": grid(pg.dims), "rank_d": grid(pg.ranks)} for pg in self.frolicher_row],
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    def diamond(self, field_name: str = "hodge") -> str:
        return render_diamond(self.n, dict(getattr(self, field_name)))

    def refined_diamond(self, k: int) -> str:
        t = {(p, q): v for (kk, p, q), v in self.refined_betti if kk == k}
        return render_diamond(self.n, t)

    # -- algebra on reports (used by the zigzag and Künneth checks)
    def __add__(self, other: "InvariantReport") -> "InvariantReport":
        return _combine(self, other, 1)

    def scale(self, m: int) -> "InvariantReport":
        return _combine(_zero_like(self), self, m)


def _zero_like(r: InvariantReport) -> InvariantReport:
    empty = tuple(SpectralPage(pg.r, (), ()) for pg in r.frolicher_col)
    return InvariantReport(r.n, (), (), (), (), (0,) * len(r.betti), empty, empty, (), 1, 1)


def _pad_pages(pages, length):
    pages = list(pages)
    while len(pages) < length:
        last = pages[-1]
        pages.append(SpectralPage(last.r + 1, last.dims, ()))
    return pages


def _combine(a: InvariantReport, b: InvariantReport, m: int) -> InvariantReport:
    if a.n != b.n:
        raise ValueError("reports of different grades")

    def add(x, y):
        acc = dict(x)
        for key, v in y:
            _add(acc, key, m * v)
        return _freeze(acc)

    length = max(len(a.frolicher_col), len(b.frolicher_col))

    def pages(x, y):
        x = _pad_pages(x, length)
        y = _pad_pages(y, length)
        return tuple(SpectralPage(i + 1, add(p.dims, q.dims), add(p.ranks, q.ranks)) for i, (p, q) in enumerate(zip(x, y)))

    col = pages(a.frolicher_col, b.frolicher_col)
    row = pages(a.frolicher_row, b.frolicher_row)
    return InvariantReport(
        a.n,
        add(a.hodge, b.hodge),
        add(a.hodge_row, b.hodge_row),
        add(a.bc, b.bc),
        add(a.aeppli, b.aeppli),
        tuple(x + m * y for x, y in zip(a.betti, b.betti)),
        col,
        row,
        add(a.refined_betti, b.refined_betti),
        _stable_page(col),
        _stable_page(row),
        a.name,
    )


def _stable_page(pages) -> int:
    """First page after which no differential is nonzero."""
    last = 0
    for pg in pages:
        if pg.ranks:
            last = pg.r
    return last + 1


def render_diamond(n: int, table: Mapping) -> str:
    """Rows of constant p+q, top row (n,n), bottom row (0,0), p decreasing left to right."""
    rows = []
    width = 0
    cells = []
    for s in range(2 * n, -1, -1):
        entries = [str(table.get((p, s - p), 0)) for p in range(min(s, n), max(0, s - n) - 1, -1)]
        cells.append(entries)
        width = max(width, max(len(e) for e in entries))
    cellw = width + 1
    full = (n + 1) * 2 * cellw
    for entries in cells:
        line = "".join(e.center(2 * cellw) for e in entries)
        rows.append(line.center(full).rstrip())
    return "\n".join(rows)


def _convergence_and_recursion(rep_pages, e_inf: dict, betti, n, orientation):
    for i, pg in enumerate(rep_pages[:-1]):
        nxt = rep_pages[i + 1]
        r = pg.r
        ranks = dict(pg.ranks)
        cur = dict(pg.dims)
        new = dict(nxt.dims)
        for p in range(n + 1):
            for q in range(n + 1):
                if orientation == "column":
                    incoming = (p - r, q + r - 1)
                else:
                    incoming = (p + r - 1, q - r)
                want = cur.get((p, q), 0) - ranks.get((p, q), 0) - ranks.get(incoming, 0)
                if new.get((p, q), 0) != want:
                    raise EngineConsistencyError(
                        f"{orientation} page recursion fails at r={r}, {(p, q)}: {new.get((p, q), 0)} != {want}"
                    )
    last = dict(rep_pages[-1].dims)
    if rep_pages[-1].ranks:
        raise EngineConsistencyError(f"{orientation} spectral sequence has a nonzero differential on its last page")
    if e_inf is not None and last != e_inf:
        raise EngineConsistencyError(f"{orientation} E_inf differs from the graded Hodge filtration")
    for k in range(2 * n + 1):
        s = sum(v for (p, q), v in last.items() if p + q == k)
        if s != betti[k]:
            raise EngineConsistencyError(f"{orientation} spectral sequence does not converge in degree {k}")


def full_report(a: DoubleComplex, pages: int | None = None, check: bool = True) -> InvariantReport:
    """All invariants, cross-checked; ``pages`` caps the spectral sequences."""
    n = a.n
    cap = n + 1 if pages is None else max(1, pages)
    col = _column_pages(a, cap, "subspace")
    conj = conjugate(a)
    row_raw = _column_pages(conj, cap, "subspace")
    row = [(_transpose(e), _transpose(rk)) for e, rk in row_raw]
    hodge = dolbeault(a)
    hodge_row = dolbeault_row(a)
    betti = de_rham(a)
    rb = refined_betti(a)
    col_pages = tuple(SpectralPage(i + 1, _freeze(e), _freeze(rk)) for i, (e, rk) in enumerate(col))
    row_pages = tuple(SpectralPage(i + 1, _freeze(e), _freeze(rk)) for i, (e, rk) in enumerate(row))
    rep = InvariantReport(
        n,
        _freeze(hodge),
        _freeze(hodge_row),
        _freeze(bott_chern(a)),
        _freeze(aeppli(a)),
        betti,
        col_pages,
        row_pages,
        _freeze(rb),
        _stable_page(col_pages),
        _stable_page(row_pages),
        a.name,
    )
    if check:
        _check_report(a, rep, complete=pages is None or cap >= n + 1)
    return rep


def _check_report(a: DoubleComplex, rep: InvariantReport, complete: bool):
    n = rep.n
    if dict(rep.frolicher_col[0].dims) != dict(rep.hodge):
        raise EngineConsistencyError("E_1 of the column spectral sequence differs from Dolbeault cohomology")
    if dict(rep.frolicher_row[0].dims) != dict(rep.hodge_row):
        raise EngineConsistencyError("E_1 of the row spectral sequence differs from ∂-cohomology")
    for k in range(2 * n + 1):
        s = sum(v for (kk, p, q), v in rep.refined_betti if kk == k)
        if s != rep.betti[k]:
            raise EngineConsistencyError(f"refined Betti numbers do not sum to b_{k}")
    fd = _hodge_filtration_dims(a)
    e_inf = {}
    for (k, p), v in fd.items():
        _add(e_inf, (p, k - p), v - fd.get((k, p + 1), 0))
    if complete:
        _convergence_and_recursion(rep.frolicher_col, e_inf, rep.betti, n, "column")
        _convergence_and_recursion(rep.frolicher_row, None, rep.betti, n, "row")
    if a.geometric:
        for (k, p, q), v in rep.refined_betti:
            if rep.b(2 * n - k, n - p, n - q) != v:
                raise EngineConsistencyError(f"Serre symmetry fails for b_{k}^{{{p},{q}}}")
        if complete and n >= 1:
            stop = max(n, 1)
            ref = rep.frolicher_col[stop - 1].dims
            if any(pg.dims != ref for pg in rep.frolicher_col[stop:]):
                raise EngineConsistencyError("column spectral sequence changes after page n")


KUNNETH_TABLES = ("hodge", "hodge_row", "betti", "refined_betti", "frolicher_col", "frolicher_row")


def _convolve(x, y) -> tuple:
    acc: dict = {}
    for a, v in x:
        for b, w in y:
            _add(acc, tuple(i + j for i, j in zip(a, b)), v * w)
    return _freeze(acc)


def kunneth_tables(a: InvariantReport, b: InvariantReport) -> dict:
    """Tables of a product predicted from its factors by bidegree convolution.

    Only the tables for which the product formula holds over a field are
    returned: Dolbeault in both orientations, de Rham, refined Betti numbers and
    the dimensions of every Frölicher page.  Bott-Chern and Aeppli numbers are
    left out because they are not multiplicative once both factors fail the
    ∂∂̄-lemma.
    """
    betti = [0] * (len(a.betti) + len(b.betti) - 1)
    for i, v in enumerate(a.betti):
        for j, w in enumerate(b.betti):
            betti[i + j] += v * w
    out = {
        "hodge": _convolve(a.hodge, b.hodge),
        "hodge_row": _convolve(a.hodge_row, b.hodge_row),
        "betti": tuple(betti),
        "refined_betti": _convolve(a.refined_betti, b.refined_betti),
    }
    for name in ("frolicher_col", "frolicher_row"):
        x, y = getattr(a, name), getattr(b, name)
        length = max(len(x), len(y))
        out[name] = tuple(
            _convolve(p.dims, q.dims) for p, q in zip(_pad_pages(x, length), _pad_pages(y, length))
        )
    return out


def kunneth_mismatches(a: InvariantReport, b: InvariantReport, product: InvariantReport) -> list[str]:
    """Names of the product tables that disagree with :func:`kunneth_tables`."""
    predicted = kunneth_tables(a, b)
    bad = []
    for name, want in predicted.items():
        got = getattr(product, name)
        if name.startswith("frolicher"):
            got = [p.dims for p in got]
            length = max(len(got), len(want))
            got = tuple(got) + (got[-1],) * (length - len(got))
            want = tuple(want) + (want[-1],) * (length - len(want))
        if got != want:
            bad.append(name)
    return bad
