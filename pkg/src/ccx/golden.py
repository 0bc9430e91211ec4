"""Reference numbers reproduced by ``ccx verify``.

Diamonds are written top row first with p decreasing from left to right, the
layout produced by :func:`ccx.invariants.render_diamond`.  Every value carries
a provenance tag: ``PAPER`` for numbers transcribed from the source, ``TRIVIAL``
for textbook facts and ``DERIVED`` for values this package computes or corrects.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Golden:
    value: object
    provenance: str
    note: str = ""


# --- Iwasawa manifold and two of its small deformations (class ii and iii)
IWASAWA_BETTI = Golden((1, 4, 8, 10, 8, 4, 1), "PAPER")
IWASAWA_HODGE_TOTALS = Golden((1, 5, 11, 14, 11, 5, 1), "PAPER")
IWASAWA_H10 = Golden(3, "PAPER")
IWASAWA_H01 = Golden(2, "PAPER")
IWASAWA_FD = Golden("A*d + e", "PAPER", "A is read in the de Rham ring, i.e. psi(A)")
IWASAWA_EVEN_ZIGZAGS = Golden(12, "PAPER")
IWASAWA_ORBIT_MULTS = Golden({"S1[1; 1,0]": 1, "S1[1; 1,1]": 2}, "PAPER")

DIAMOND_I_I = Golden(((1,), (2, 3), (2, 6, 3), (1, 6, 6, 1), (3, 6, 2), (3, 2), (1,)), "PAPER")
DIAMOND_I_II = Golden(((1,), (2, 2), (2, 5, 2), (1, 5, 5, 1), (2, 5, 2), (2, 2), (1,)), "PAPER")
DIAMOND_I_III = Golden(((1,), (2, 2), (2, 5, 1), (1, 4, 4, 1), (1, 5, 2), (2, 2), (1,)), "PAPER")
# two nilmanifold structures; X feeds only B·d̃, both are external inputs
DIAMOND_H15_X = Golden(((1,), (2, 1), (2, 4, 2), (1, 5, 5, 1), (2, 4, 2), (1, 2), (1,)), "PAPER")
DIAMOND_H15_Y = Golden(((1,), (2, 1), (2, 3, 1), (1, 3, 3, 1), (1, 3, 2), (1, 2), (1,)), "PAPER")
DIAMOND_H15_X_PRIME = Golden(
    ((1,), (1, 3), (1, 3, 3), (1, 3, 3, 1), (1, 3, 1), (1, 1), (1,)), "PAPER",
    "as printed; violates Serre symmetry",
)
DIAMOND_H15_X_PRIME_SERRE = Golden(
    ((1,), (3, 1), (3, 3, 1), (1, 3, 3, 1), (1, 3, 3), (1, 3), (1,)), "DERIVED",
    "the Serre-symmetric diamond forced by the identity and DIAMOND_H15_Y",
)

# --- displayed diamonds of named elements of the Hodge ring
DIAMOND_E = Golden(((0,), (0, 0), (0, 0, 1), (0, 1, 1, 0), (1, 0, 0), (0, 0), (0,)), "PAPER")
DIAMOND_BD = Golden(((0,), (0, 0), (0, 1, 1), (0, 2, 2, 0), (1, 1, 0), (0, 0), (0,)), "PAPER")
DIAMOND_AD = Golden(((0,), (0, 1), (0, 2, 0), (0, 1, 1, 0), (0, 2, 0), (1, 0), (0,)), "PAPER")
DIAMOND_BT = Golden(((0,), (0, 0), (1, 0, -1), (0, 0, 0, 0), (-1, 0, 1), (0, 0), (0,)), "PAPER")
DIAMOND_AS = Golden(((0,), (0, 0), (1, -2, 1), (0, 0, 0, 0), (1, -2, 1), (0, 0), (0,)), "PAPER")
DIAMOND_AT = Golden(((0,), (1, -1), (0, 0, 0), (0, 0, 0, 0), (0, 0, 0), (-1, 1), (0,)), "PAPER")
DIAMOND_R = Golden(((0,), (0, 0), (0, -1, 1), (0, 0, 0, 0), (1, -1, 0), (0, 0), (0,)), "PAPER")
_Z4 = (0,), (0, 0), (0, 0, 0)
DIAMOND_DT = Golden(((0,), (0, 0), (0, 1, -1), (0, 0, 0, 0), (0, 1, -2, 1, 0), (0, 0, 0, 0), (-1, 1, 0), (0, 0), (0,)),
                    "PAPER")
DIAMOND_CS = Golden(_Z4 + ((0, 0, 0, 0), (0, 1, -2, 1, 0), (0, 0, 0, 0)) + _Z4[::-1], "PAPER")
DIAMOND_AR = Golden(((0,), (0, 0), (0, -1, 1), (0, 0, 0, 0), (0, 1, -2, 1, 0), (0, 0, 0, 0), (1, -1, 0), (0, 0), (0,)),
                    "PAPER")
DIAMOND_CT = Golden(_Z4 + ((0, 1, -1, 0), (0, 0, 0, 0, 0), (0, -1, 1, 0)) + _Z4[::-1], "PAPER")
DIAMOND_DS = Golden(_Z4 + ((0, 1, -2, 1), (0, 0, 0, 0, 0), (1, -2, 1, 0)) + _Z4[::-1], "PAPER")
DIAMOND_ABS = Golden(_Z4 + ((1, -1, -1, 1), (0, 0, 0, 0, 0), (1, -1, -1, 1)) + _Z4[::-1], "PAPER")
DIAMOND_BBT = Golden(_Z4 + ((-1, -1, 1, 1), (0, 0, 0, 0, 0), (-1, -1, 1, 1)) + _Z4[::-1], "PAPER",
                     "as printed; the upper row has the wrong sign")
DIAMOND_BBT_CORRECTED = Golden(_Z4 + ((1, 1, -1, -1), (0, 0, 0, 0, 0), (-1, -1, 1, 1)) + _Z4[::-1], "DERIVED",
                               "upper row negated, as forced by Serre symmetry")

# name -> (element expression in the Hodge ring, displayed diamond)
DISPLAYED_ELEMENTS = {
    "e": ("e", DIAMOND_E),
    "Bd": ("B*d", DIAMOND_BD),
    "Ad": ("A*d", DIAMOND_AD),
    "BT": ("B*T", DIAMOND_BT),
    "AS": ("A*S", DIAMOND_AS),
    "AT": ("A*T", DIAMOND_AT),
    "R": ("R", DIAMOND_R),
    "DT": ("D*T", DIAMOND_DT),
    "CS": ("C*S", DIAMOND_CS),
    "AR": ("A*R", DIAMOND_AR),
    "CT": ("C*T", DIAMOND_CT),
    "DS": ("D*S", DIAMOND_DS),
    "ABS": ("A*B*S", DIAMOND_ABS),
    "BBT": ("B^2*T", DIAMOND_BBT_CORRECTED),
}

# identities among named elements: (text, ring, provenance, note)
RING_IDENTITIES = (
    ("BT=AS+2Bd-4e", "HXY", "PAPER", ""),
    ("R=2e-Bd", "HXY", "PAPER", ""),
    ("Q=CS-AR", "HXY", "DERIVED", "printed as Q = AR - CS, which is off by a sign"),
    ("DT=2CS-AR", "HXY", "PAPER", ""),
    ("4CT=2DS-ABS+B^2T", "HXY", "PAPER", ""),
    ("2Cd=Be", "DR", "PAPER", ""),
    ("2Dd=ABd", "DR", "PAPER", ""),
)

# realizations: (element expression, [(coefficient, diamond)], provenance)
REALIZATIONS = (
    ("e", ((1, DIAMOND_I_II), (-1, DIAMOND_I_III)), "PAPER"),
    ("B*d", ((1, DIAMOND_H15_X), (-1, DIAMOND_H15_Y)), "PAPER"),
    ("A*d - B*d + 2*e", ((1, DIAMOND_I_I), (-1, DIAMOND_I_II)), "PAPER"),
    ("A*T + A*d - 2*B*d + 3*e + B*T", ((1, DIAMOND_H15_X_PRIME_SERRE), (-1, DIAMOND_H15_Y)), "DERIVED"),
)

# --- rings
RBPRIME_RANK_3 = Golden(16, "PAPER")
HDRFORM_RANKS = Golden((1, 2, 5, 10, 16, 22), "DERIVED")
QUOTIENT_MOD_C_EXCLUSIONS_3 = Golden(("S[2; 1,1]", "S[3; 2,1]"), "PAPER")

# --- nilmanifold family X_n, n = 2m + 1
FAMILY_TOP_REFINED_BETTI = Golden(1, "PAPER")
FAMILY_DEL_EXACT_DIM = Golden(1, "PAPER")
