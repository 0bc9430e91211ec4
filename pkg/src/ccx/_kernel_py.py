"""Pure-Python elimination kernel over the Gaussian integers.

Rows are sparse dicts mapping column index to a Gaussian integer stored as an
``(re, im)`` pair of Python ints.  Every function here works on spans only, so
rows may be rescaled by any nonzero Gaussian integer along the way.  When no
entry has an imaginary part the work is delegated to a plain integer path,
which is several times faster.
"""

from __future__ import annotations

from math import gcd

BACKEND = "python"


def _is_real(rows):
    for row in rows:
        for v in row.values():
            if v[1]:
                return False
    return True


# ---------------------------------------------------------------- integers


def _int_primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


def _int_insert(pivots, row):
    """Reduce ``row`` against ``pivots`` (col -> row); return leftover or None."""
    while row:
        c = min(row)
        prow = pivots.get(c)
        if prow is None:
            return _int_primitive(row), c
        a = row[c]
        b = prow[c]
        g = gcd(a, b)
        fa = b // g
        fb = a // g
        new = {k: fa * v for k, v in row.items()} if fa != 1 else dict(row)
        for k, v in prow.items():
            w = new.get(k, 0) - fb * v
            if w:
                new[k] = w
            else:
                new.pop(k, None)
        row = new
    return None, None


def _int_echelon(rows, reduced):
    pivots = {}
    for r in rows:
        if not r:
            continue
        row, c = _int_insert(pivots, dict(r))
        if row is not None:
            pivots[c] = row
    if reduced:
        cols = sorted(pivots)
        for idx in range(len(cols) - 1, -1, -1):
            c = cols[idx]
            prow = pivots[c]
            b = prow[c]
            for c2 in cols[:idx]:
                other = pivots[c2]
                a = other.get(c)
                if not a:
                    continue
                g = gcd(a, b)
                fa = b // g
                fb = a // g
                new = {k: fa * v for k, v in other.items()}
                for k, v in prow.items():
                    w = new.get(k, 0) - fb * v
                    if w:
                        new[k] = w
                    else:
                        new.pop(k, None)
                pivots[c2] = _int_primitive(new)
    return [(c, pivots[c]) for c in sorted(pivots)]


# --------------------------------------------------------- Gaussian integers


def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gdivmod_round(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    num = _gmul(a, (b[0], -b[1]))
    # nearest Gaussian integer to a / b
    q = ((2 * num[0] + n) // (2 * n), (2 * num[1] + n) // (2 * n))
    qb = _gmul(q, b)
    return q, (a[0] - qb[0], a[1] - qb[1])


def _ggcd(a, b):
    while b != (0, 0):
        _, r = _gdivmod_round(a, b)
        a, b = b, r
    return a


def _gexact_div(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    num = _gmul(a, (b[0], -b[1]))
    return (num[0] // n, num[1] // n)


def _normalize_unit(v):
    """Unit u such that u*v lies in the quadrant re > 0, im >= 0."""
    re, im = v
    if re > 0 and im >= 0:
        return (1, 0)
    if re <= 0 and im > 0:
        return (0, -1)
    if re < 0 and im <= 0:
        return (-1, 0)
    return (0, 1)


def _g_primitive(row):
    g = 0
    for re, im in row.values():
        g = gcd(g, gcd(re, im))
        if g == 1:
            break
    u = _normalize_unit(row[min(row)])
    out = {}
    for k, v in row.items():
        if g != 1:
            v = (v[0] // g, v[1] // g)
        if u != (1, 0):
            v = _gmul(u, v)
        out[k] = v
    return out


def _g_combine(row, prow, c):
    a = row[c]
    b = prow[c]
    g = _ggcd(a, b)
    fa = _gexact_div(b, g)
    fb = _gexact_div(a, g)
    if fa == (1, 0):
        new = dict(row)
    else:
        new = {k: _gmul(fa, v) for k, v in row.items()}
    f0, f1 = fb
    for k, v in prow.items():
        o = new.get(k)
        w0 = -(f0 * v[0] - f1 * v[1])
        w1 = -(f0 * v[1] + f1 * v[0])
        if o is not None:
            w0 += o[0]
            w1 += o[1]
        if w0 or w1:
            new[k] = (w0, w1)
        elif o is not None:
            del new[k]
    return new


def _g_echelon(rows, reduced):
    pivots = {}
    for r in rows:
        row = dict(r)
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                pivots[c] = _g_primitive(row)
                break
            row = _g_combine(row, prow, c)
    if reduced:
        cols = sorted(pivots)
        for idx in range(len(cols) - 1, -1, -1):
            c = cols[idx]
            prow = pivots[c]
            for c2 in cols[:idx]:
                other = pivots[c2]
                if c in other:
                    pivots[c2] = _g_primitive(_g_combine(other, prow, c))
    return [(c, pivots[c]) for c in sorted(pivots)]


# ------------------------------------------------------------------ public


def echelon(rows, ncols, reduced=True):
    """Echelon form of the span of ``rows`` as a list of ``(pivot, row)``.

    Rows come back primitive, sorted by pivot column, and (if ``reduced``) with
    zeros in every other row's pivot column.  ``ncols`` is accepted for
    signature parity with the compiled kernel.
    """
    rows = [r for r in rows if r]
    if not rows:
        return []
    if _is_real(rows):
        ints = [{k: v[0] for k, v in r.items()} for r in rows]
        out = _int_echelon(ints, reduced)
        return [(c, {k: (v, 0) for k, v in row.items()}) for c, row in out]
    return _g_echelon(rows, reduced)


def rank(rows, ncols):
    rows = [r for r in rows if r]
    if not rows:
        return 0
    if _is_real(rows):
        ints = [{k: v[0] for k, v in r.items()} for r in rows]
        return len(_int_echelon(ints, False))
    return len(_g_echelon(rows, False))
