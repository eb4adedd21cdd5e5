"""Exact point maps induced by the Legendrian loops.

Each verified loop acts on framed moduli points.  The cyclic shift
rotates the column tuple; the sigma1 loop on T36 and the xi loops on
T44 replace one column per window by a vector u cut out by a subspace
intersection and pinned by the wedge normalization v_a ∧ v_b = v_b ∧ u.

Composition is by group words.  On T36 the generators are A (column
shift by one), A2 (shift by two), and B = sigma1 after a shift, so that
pullbacks compose contravariantly.  On T44 the generators are X1, X2,
X3.  Degeneracies name the failing vector and subspace pair so callers
can resample.
"""

from __future__ import annotations

import re

from .linalg import (
    DegeneracyError,
    DegenerateNormalization,
    Subspace,
    intersect,
    wedge_normalize,
)
from .moduli import Family, ModuliPoint, T36, T44


class DegenerateIntersection(DegeneracyError):
    """A required intersection line has the wrong dimension."""

    def __init__(self, message: str, *, label: str | None = None,
                 pair: tuple[int, ...] = (), other: tuple[int, ...] = (),
                 dim: int | None = None):
        super().__init__(message)
        self.label = label
        self.pair = pair
        self.other = other
        self.dim = dim


def act_shift(p: ModuliPoint, j: int) -> ModuliPoint:
    """Rotate columns left by j (mod N): v_1..v_N -> v_{1+j}..v_j."""
    n = p.family.n_columns
    j %= n
    return ModuliPoint(p.family, p.field, p.columns[j:] + p.columns[:j])


def _replacement_vector(p: ModuliPoint, label: str, pair: tuple[int, int],
                        other: tuple[int, ...]):
    k = p.family.k
    a, b = p.col(pair[0]), p.col(pair[1])
    plane = Subspace.span([a, b], k, p.field)
    target = Subspace.span([p.col(i) for i in other], k, p.field)
    line = intersect(plane, target)
    if line.dim != 1:
        raise DegenerateIntersection(
            f"{label}: span{pair} meets span{other} in dimension {line.dim}, not 1",
            label=label, pair=pair, other=other, dim=line.dim,
        )
    try:
        return wedge_normalize(a, b, line.basis[0])
    except DegenerateNormalization as exc:
        raise DegenerateNormalization(f"{label}: {exc}") from None


# (label, pair spanning the 2-plane, tuple spanning the other subspace)
_SIGMA1_WINDOWS = (
    ("u1", (1, 2), (3, 4)),
    ("u2", (4, 5), (6, 7)),
    ("u3", (7, 8), (9, 1)),
)


def act_sigma1(p: ModuliPoint) -> ModuliPoint:
    """The sigma1 loop on T36: (v1..v9) -> (v2,u1,v3, v5,u2,v6, v8,u3,v9)
    with u_t the wedge-normalized line <v_a,v_b> ∩ <v_c,v_d> per window."""
    if p.family is not T36:
        raise ValueError(f"act_sigma1 needs family T36, got {p.family.name}")
    u = {
        label: _replacement_vector(p, label, pair, other)
        for label, pair, other in _SIGMA1_WINDOWS
    }
    cols = (
        p.col(2), u["u1"], p.col(3),
        p.col(5), u["u2"], p.col(6),
        p.col(8), u["u3"], p.col(9),
    )
    return ModuliPoint(p.family, p.field, cols)


# i -> ((u specs), output layout); "u1"/"u2" mark the replaced columns.
_XI_TABLE = {
    1: (
        (("u1", (1, 2), (3, 4, 5)), ("u2", (5, 6), (7, 8, 1))),
        (2, "u1", 3, 4, 6, "u2", 7, 8),
    ),
    2: (
        (("u1", (2, 3), (4, 5, 6)), ("u2", (6, 7), (8, 1, 2))),
        (1, 3, "u1", 4, 5, 7, "u2", 8),
    ),
    3: (
        (("u1", (3, 4), (5, 6, 7)), ("u2", (7, 8), (1, 2, 3))),
        (1, 2, 4, "u1", 5, 6, 8, "u2"),
    ),
}


def act_xi(p: ModuliPoint, i: int) -> ModuliPoint:
    """The xi_i loop on T44 (i in {1,2,3}); each window replaces one
    column by the wedge-normalized line <v_a,v_b> ∩ <v_c,v_d,v_e>."""
    if p.family is not T44:
        raise ValueError(f"act_xi needs family T44, got {p.family.name}")
    if i not in _XI_TABLE:
        raise ValueError(f"xi index must be 1, 2 or 3, got {i}")
    specs, layout = _XI_TABLE[i]
    u = {
        label: _replacement_vector(p, label, pair, other)
        for label, pair, other in specs
    }
    cols = tuple(u[slot] if isinstance(slot, str) else p.col(slot) for slot in layout)
    return ModuliPoint(p.family, p.field, cols)


_TOKEN_FAMILY = {
    "A": T36, "A2": T36, "B": T36, "S1": T36,
    "X1": T44, "X2": T44, "X3": T44,
}
_SHIFT_RE = re.compile(r"^SH\((-?\d+)\)$")

#: A group word is a tuple of generator tokens, applied left to right.
GroupWord = tuple[str, ...]


def parse_group_word(text: str) -> GroupWord:
    """Parse whitespace-separated tokens A, A2, B, S1, SH(j), X1, X2, X3."""
    tokens = tuple(text.split())
    for tok in tokens:
        if tok not in _TOKEN_FAMILY and not _SHIFT_RE.match(tok):
            raise ValueError(f"unknown generator token {tok!r}")
    return tokens


def _check_token_family(tok: str, family: Family):
    wanted = _TOKEN_FAMILY.get(tok)
    if wanted is not None and family is not wanted:
        raise ValueError(f"token {tok} applies to {wanted.name}, point is {family.name}")


def act_word(p: ModuliPoint, word) -> ModuliPoint:
    """Apply a group word left to right (the first token acts first).

    Degeneracies are re-raised with the failing prefix position.
    """
    if isinstance(word, str):
        word = parse_group_word(word)
    for pos, tok in enumerate(word, start=1):
        _check_token_family(tok, p.family)
        try:
            p = _apply_token(p, tok)
        except DegeneracyError as exc:
            exc.args = (f"token {pos} ({tok}): {exc}",)
            raise
    return p


def _apply_token(p: ModuliPoint, tok: str) -> ModuliPoint:
    if tok == "A":
        return act_shift(p, 1)
    if tok == "A2":
        return act_shift(p, 2)
    if tok == "B":
        return act_sigma1(act_shift(p, 1))
    if tok == "S1":
        return act_sigma1(p)
    if tok == "X1":
        return act_xi(p, 1)
    if tok == "X2":
        return act_xi(p, 2)
    if tok == "X3":
        return act_xi(p, 3)
    m = _SHIFT_RE.match(tok)
    if m:
        return act_shift(p, int(m.group(1)))
    raise ValueError(f"unknown generator token {tok!r}")
