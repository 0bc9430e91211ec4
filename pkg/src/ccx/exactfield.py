"""Exact arithmetic over the Gaussian rationals Q(i) and the linear algebra on top.

Two layers live here:

* the public one: :class:`GaussianRational`, :class:`Matrix` and
  :class:`Subspace` plus the free functions :func:`rank`, :func:`kernel`,
  :func:`image`, :func:`subspace_sum`, :func:`subspace_intersection`,
  :func:`preimage` and :func:`quotient_dim`;
* an integer-row layer (``row_rank``, ``row_echelon``, ``null_rows``,
  ``reduce_rows``) used by the hot paths elsewhere.  Its vectors are sparse
  dicts of Gaussian integers ``(re, im)``, meaningful only up to scaling.

Entries are stored sparsely even though the matrices are conceptually dense;
the elimination itself runs in the kernel chosen by :mod:`ccx._backend`.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from . import _backend

__all__ = [
    "GaussianRational",
    "Matrix",
    "Subspace",
    "ScalarSyntaxError",
    "AmbientMismatchError",
    "NotASubspaceError",
    "parse_scalar",
    "rank",
    "kernel",
    "image",
    "subspace_sum",
    "subspace_intersection",
    "preimage",
    "quotient_dim",
    "I",
    "ZERO",
    "ONE",
]


class ScalarSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, message: str = "malformed scalar"):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at column {pos + 1}: {text!r}")


class AmbientMismatchError(ValueError):
    pass


class NotASubspaceError(ValueError):
    pass


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """An element ``re + im*i`` of Q(i), always in canonical form."""

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            self._re, self._im = re._re, re._im
            return
        self._re = _to_fraction(re)
        self._im = _to_fraction(im)

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot use {type(x).__name__} as an exact Gaussian rational")

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self._re, self._im, o._re, o._im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussianRational(o._re / n, -o._im / n)

    def __rtruediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self._re, -self._im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ONE / self) ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self._re, -self._im)

    def norm(self) -> Fraction:
        return self._re * self._re + self._im * self._im

    def is_real(self) -> bool:
        return self._im == 0

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._re == other._re and self._im == other._im
        if isinstance(other, (int, Fraction)):
            return self._im == 0 and self._re == other
        return NotImplemented

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        re, im = self._re, self._im
        if not im:
            return str(re)
        if im == 1:
            ipart = "i"
        elif im == -1:
            ipart = "-i"
        else:
            ipart = f"{im}*i"
        if not re:
            return ipart
        if ipart.startswith("-"):
            return f"{re}{ipart}"
        return f"{re}+{ipart}"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

_TERM = _re.compile(r"\s*([+-])?\s*(?:(\d+)(?:\s*/\s*(\d+))?\s*(\*\s*i)?|(i))\s*")


def parse_scalar(text: str) -> GaussianRational:
    """Parse ``p/q``, ``p/q*i``, ``i`` and signed sums of those."""
    s = text
    pos = 0
    total = ZERO
    first = True
    if not s.strip():
        raise ScalarSyntaxError(text, 0, "empty scalar")
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(5) is None):
            raise ScalarSyntaxError(text, pos)
        sign, num, den, itail, bare_i = m.groups()
        if sign is None and not first:
            raise ScalarSyntaxError(text, pos, "missing + or - between terms")
        if bare_i:
            val = I
        else:
            if den is not None and int(den) == 0:
                raise ScalarSyntaxError(text, pos, "zero denominator")
            q = Fraction(int(num), int(den) if den else 1)
            val = GaussianRational(0, q) if itail else GaussianRational(q)
        total = total - val if sign == "-" else total + val
        first = False
        pos = m.end()
    return total


# ------------------------------------------------------------ integer rows


def to_int_row(entries: dict) -> dict:
    """Scale a sparse row of Gaussian rationals to a Gaussian-integer row."""
    den = 1
    for v in entries.values():
        den = lcm(den, v.re.denominator, v.im.denominator)
    out = {}
    for k, v in entries.items():
        if v:
            out[k] = (int(v.re * den), int(v.im * den))
    return out


def row_rank(rows: Sequence[dict], ncols: int) -> int:
    return _backend.rank(list(rows), ncols)


def row_echelon(rows: Sequence[dict], ncols: int, reduced: bool = True) -> list:
    return _backend.echelon(list(rows), ncols, reduced)


def _primitive(vec: dict) -> dict:
    g = 0
    for a, b in vec.values():
        g = gcd(g, gcd(a, b))
    if g > 1:
        vec = {k: (a // g, b // g) for k, (a, b) in vec.items()}
    return vec


def null_rows_from_echelon(ech: list, ncols: int) -> list:
    pivots = {c for c, _ in ech}
    by_col: dict[int, list] = {}
    real = True
    for c, r in ech:
        for k, v in r.items():
            if v[1]:
                real = False
            if k != c:
                by_col.setdefault(k, []).append((c, r))
    out = []
    for f in range(ncols):
        if f in pivots:
            continue
        involved = by_col.get(f, ())
        if real:
            den = 1
            for c, r in involved:
                den = lcm(den, r[c][0])
            vec = {f: (den, 0)}
            for c, r in involved:
                vec[c] = (-r[f][0] * (den // r[c][0]), 0)
        else:
            den = 1
            for c, r in involved:
                p = r[c]
                den = lcm(den, p[0] * p[0] + p[1] * p[1])
            vec = {f: (den, 0)}
            for c, r in involved:
                p0, p1 = r[c]
                a0, a1 = r[f]
                s = den // (p0 * p0 + p1 * p1)
                # -a * conj(p) * s
                vec[c] = (-(a0 * p0 + a1 * p1) * s, -(a1 * p0 - a0 * p1) * s)
        out.append(_primitive(vec))
    return out


def null_rows(rows: Sequence[dict], ncols: int) -> list:
    """Spanning Gaussian-integer rows of the right null space."""
    return null_rows_from_echelon(row_echelon(rows, ncols, True), ncols)


def reduce_rows(vectors: Iterable[dict], ech: list) -> list:
    """Normal forms of ``vectors`` modulo a reduced echelon basis, up to scaling."""
    out = []
    for v in vectors:
        v = dict(v)
        for c, r in ech:
            a = v.get(c)
            if a is None:
                continue
            p = r[c]
            # v <- p*v - a*r
            new = {}
            for k, x in v.items():
                new[k] = (p[0] * x[0] - p[1] * x[1], p[0] * x[1] + p[1] * x[0])
            for k, x in r.items():
                y0 = a[0] * x[0] - a[1] * x[1]
                y1 = a[0] * x[1] + a[1] * x[0]
                o = new.get(k, (0, 0))
                w = (o[0] - y0, o[1] - y1)
                if w[0] or w[1]:
                    new[k] = w
                else:
                    new.pop(k, None)
            v = _primitive(new) if new else new
        out.append(v)
    return out


def _canonical_row(pivot: int, row: dict, ambient: int) -> tuple:
    p = row[pivot]
    pn = p[0] * p[0] + p[1] * p[1]
    vec = [ZERO] * ambient
    for k, (a, b) in row.items():
        # (a + b i) / p  =  (a + b i) * conj(p) / |p|^2
        vec[k] = GaussianRational(
            Fraction(a * p[0] + b * p[1], pn), Fraction(b * p[0] - a * p[1], pn)
        )
    return tuple(vec)


# ------------------------------------------------------------------ Matrix


class Matrix:
    """An immutable matrix over Q(i).

    Nonzero entries are kept in a dict keyed by ``(row, col)``; everything else
    reads as zero.
    """

    __slots__ = ("rows", "cols", "_data", "_rowdicts", "_introws")

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix shape must be nonnegative")
        self.rows = rows
        self.cols = cols
        data = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
                v = GaussianRational.coerce(v)
                if v:
                    data[(i, j)] = v
        self._data = data
        self._rowdicts = None
        self._introws = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key) -> GaussianRational:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._data.get((i, j), ZERO)

    def items(self):
        """Nonzero entries as ``((row, col), value)`` in row-major order."""
        return sorted(self._data.items())

    def nnz(self) -> int:
        return len(self._data)

    def is_zero(self) -> bool:
        return not self._data

    def to_lists(self) -> list[list[GaussianRational]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._data.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict]:
        if self._rowdicts is None:
            rd: list[dict] = [{} for _ in range(self.rows)]
            for (i, j), v in self._data.items():
                rd[i][j] = v
            self._rowdicts = rd
        return self._rowdicts

    def int_rows(self) -> list[dict]:
        """Rows scaled to Gaussian integers (same row space, same kernel)."""
        if self._introws is None:
            self._introws = [to_int_row(r) for r in self.row_dicts()]
        return self._introws

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._data.items()})

    T = property(transpose)

    def conjugate(self) -> "Matrix":
        return Matrix(self.rows, self.cols, {k: v.conjugate() for k, v in self._data.items()})

    def scale(self, c) -> "Matrix":
        c = GaussianRational.coerce(c)
        return Matrix(self.rows, self.cols, {k: c * v for k, v in self._data.items()})

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = dict(self._data)
        for k, v in other._data.items():
            data[k] = data.get(k, ZERO) + v
        return Matrix(self.rows, self.cols, data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        right = other.row_dicts()
        acc: dict = {}
        for (i, k), a in self._data.items():
            for j, b in right[k].items():
                key = (i, j)
                acc[key] = acc.get(key, ZERO) + a * b
        return Matrix(self.rows, other.cols, acc)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match matrix columns")
        out = [ZERO] * self.rows
        for (i, j), a in self._data.items():
            if vec[j]:
                out[i] = out[i] + a * vec[j]
        return tuple(out)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        rmap = {r: a for a, r in enumerate(row_idx)}
        cmap = {c: b for b, c in enumerate(col_idx)}
        data = {}
        for (i, j), v in self._data.items():
            if i in rmap and j in cmap:
                data[(rmap[i], cmap[j])] = v
        return Matrix(len(row_idx), len(col_idx), data)

    @staticmethod
    def hstack(*ms: "Matrix") -> "Matrix":
        rows = ms[0].rows
        data = {}
        off = 0
        for m in ms:
            if m.rows != rows:
                raise ValueError("hstack needs equal row counts")
            for (i, j), v in m._data.items():
                data[(i, j + off)] = v
            off += m.cols
        return Matrix(rows, off, data)

    @staticmethod
    def vstack(*ms: "Matrix") -> "Matrix":
        cols = ms[0].cols
        data = {}
        off = 0
        for m in ms:
            if m.cols != cols:
                raise ValueError("vstack needs equal column counts")
            for (i, j), v in m._data.items():
                data[(i + off, j)] = v
            off += m.rows
        return Matrix(off, cols, data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._data.items())))

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in row) for row in self.to_lists())
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


# ---------------------------------------------------------------- Subspace


class Subspace:
    """A subspace of Q(i)^ambient_dim.

    The ``basis`` is the reduced row echelon form (leftmost pivots, scaled to
    one), so equal subspaces always have identical bases.
    """

    __slots__ = ("ambient_dim", "_ech", "_basis")

    def __init__(self, ambient_dim: int, vectors: Iterable = ()):
        rows = []
        for v in vectors:
            if isinstance(v, dict):
                entries = {k: GaussianRational.coerce(x) for k, x in v.items()}
            else:
                if len(v) != ambient_dim:
                    raise AmbientMismatchError(
                        f"vector of length {len(v)} in ambient dimension {ambient_dim}"
                    )
                entries = {k: GaussianRational.coerce(x) for k, x in enumerate(v) if x}
            rows.append(to_int_row(entries))
        self.ambient_dim = ambient_dim
        self._ech = row_echelon(rows, ambient_dim, True)
        self._basis = None

    @classmethod
    def _from_rows(cls, ambient_dim: int, rows: Sequence[dict], echelonized: bool = False):
        self = cls.__new__(cls)
        self.ambient_dim = ambient_dim
        self._ech = list(rows) if echelonized else row_echelon(rows, ambient_dim, True)
        self._basis = None
        return self

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls._from_rows(n, [], True)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls._from_rows(n, [(i, {i: (1, 0)}) for i in range(n)], True)

    @property
    def dim(self) -> int:
        return len(self._ech)

    def __len__(self):
        return self.dim

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self._ech)

    @property
    def basis(self) -> tuple[tuple[GaussianRational, ...], ...]:
        if self._basis is None:
            self._basis = tuple(_canonical_row(c, r, self.ambient_dim) for c, r in self._ech)
        return self._basis

    def int_rows(self) -> list[dict]:
        return [r for _, r in self._ech]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __contains__(self, vector) -> bool:
        probe = Subspace(self.ambient_dim, [vector])
        return probe.is_subspace_of(self)

    def is_subspace_of(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        if self.dim > other.dim:
            return False
        return row_rank(other.int_rows() + self.int_rows(), self.ambient_dim) == other.dim

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return subspace_intersection(self, other)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatchError(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def rank(m: Matrix) -> int:
    return row_rank(m.int_rows(), m.cols)


def kernel(m: Matrix) -> Subspace:
    return Subspace._from_rows(m.cols, null_rows(m.int_rows(), m.cols))


def image(m: Matrix) -> Subspace:
    return Subspace._from_rows(m.rows, m.transpose().int_rows())


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace._from_rows(a.ambient_dim, a.int_rows() + b.int_rows())


def intersect_rows(a_rows: Sequence[dict], b_rows: Sequence[dict], n: int) -> list:
    """Spanning rows of span(a) ∩ span(b) by the Zassenhaus block trick."""
    block = []
    for r in a_rows:
        d = dict(r)
        for k, v in r.items():
            d[k + n] = v
        block.append(d)
    block.extend(dict(r) for r in b_rows)
    ech = row_echelon(block, 2 * n, False)
    return [{k - n: v for k, v in r.items()} for c, r in ech if c >= n]


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace._from_rows(a.ambient_dim, intersect_rows(a.int_rows(), b.int_rows(), a.ambient_dim))


def preimage(m: Matrix, w: Subspace) -> Subspace:
    """``{x : m x ∈ w}`` as a subspace of the source."""
    if w.ambient_dim != m.rows:
        raise AmbientMismatchError("target subspace does not live in the matrix's codomain")
    basis = w.basis
    rows = m.row_dicts()
    full = []
    for t in range(m.rows):
        entries = dict(rows[t])
        for idx, vec in enumerate(basis):
            if vec[t]:
                entries[m.cols + idx] = vec[t]
        full.append(to_int_row(entries))
    sol = null_rows(full, m.cols + len(basis))
    proj = [{k: v for k, v in r.items() if k < m.cols} for r in sol]
    return Subspace._from_rows(m.cols, proj)


def quotient_dim(a: Subspace, b: Subspace) -> int:
    """dim(a / b); ``b`` must be contained in ``a``."""
    _check_ambient(a, b)
    if not b.is_subspace_of(a):
        raise NotASubspaceError("quotient requires the second space to lie inside the first")
    return a.dim - b.dim
