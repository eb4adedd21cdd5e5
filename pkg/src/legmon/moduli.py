"""Framed moduli points, genericity, Plücker minors, and flag chains.

A `ModuliPoint` is a k×N matrix of exact scalars whose columns
v_1..v_N are the framed vectors representing a point inside Gr(k,N).
Two families are supported:

* ``T36``: k = 3, N = 9, base braid word (σ1σ2)^9 on 3 strands;
* ``T44``: k = 4, N = 8, base braid word (σ1σ2σ3)^8 on 4 strands.

Genericity ("validity") asks that every cyclically consecutive k×k
minor is nonzero and, for sampled points, that the family's loop
actions are defined.  `flags_from_point` rebuilds the chain of complete
flags along the base braid word and `validate_bott_samelson` checks the
cyclic adjacency conditions that characterize the open cell.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from random import Random

from .fields import (
    Field,
    FieldScalar,
    field_from_json,
    field_to_json,
    format_scalar,
)
from .linalg import DegeneracyError, Matrix, Subspace, determinant


class InvalidPoint(ValueError):
    """A point that fails the validity predicate where validity is required."""


class SamplingExhausted(RuntimeError):
    """Rejection sampling hit its retry bound without a valid point."""

    def __init__(self, family: "Family", seed, attempts: int):
        super().__init__(
            f"no valid {family.name} point found in {attempts} attempts (seed {seed})"
        )
        self.family = family
        self.seed = seed
        self.attempts = attempts


@dataclass(frozen=True)
class Family:
    """One of the two torus-link families, fixing k, N and the base word."""

    name: str
    k: int
    n_columns: int
    torus: tuple[int, int]

    @property
    def base_letters(self) -> tuple[int, ...]:
        return tuple(range(1, self.k)) * self.n_columns

    def base_word(self):
        from .braids import BraidWord

        return BraidWord(self.k, self.base_letters)


T36 = Family("T36", 3, 9, (3, 6))
T44 = Family("T44", 4, 8, (4, 4))
FAMILIES = {"T36": T36, "T44": T44}


def get_family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None


@dataclass(frozen=True)
class ModuliPoint:
    """Framed vectors v_1..v_N as columns of a k×N matrix over one field."""

    family: Family
    field: Field
    columns: tuple[tuple[FieldScalar, ...], ...]

    def __post_init__(self):
        if len(self.columns) != self.family.n_columns:
            raise ValueError(
                f"{self.family.name} needs {self.family.n_columns} columns, "
                f"got {len(self.columns)}"
            )
        if any(len(c) != self.family.k for c in self.columns):
            raise ValueError(f"{self.family.name} columns must have length {self.family.k}")

    def col(self, i: int) -> tuple[FieldScalar, ...]:
        """Column v_i, 1-based and cyclic in i."""
        return self.columns[(i - 1) % self.family.n_columns]

    def matrix(self) -> Matrix:
        return Matrix.from_columns(self.columns, self.field)


@dataclass(frozen=True)
class MinorCheck:
    indices: tuple[int, ...]  # cyclic window, 1-based
    value: FieldScalar
    nonzero: bool


@dataclass(frozen=True)
class ValidityReport:
    minors: tuple[MinorCheck, ...]
    is_valid: bool

    def to_json(self) -> dict:
        return {
            "is_valid": self.is_valid,
            "minors": [
                {
                    "indices": list(m.indices),
                    "value": format_scalar(m.value),
                    "nonzero": m.nonzero,
                }
                for m in self.minors
            ],
        }


def validate_point(p: ModuliPoint) -> ValidityReport:
    """Evaluate all N cyclic consecutive k×k minors; valid iff none vanish."""
    fam = p.family
    checks = []
    for start in range(1, fam.n_columns + 1):
        idx = tuple((start - 1 + t) % fam.n_columns + 1 for t in range(fam.k))
        m = Matrix.from_columns([p.col(i) for i in idx], p.field)
        value = determinant(m)
        checks.append(MinorCheck(idx, value, bool(value)))
    return ValidityReport(tuple(checks), all(c.nonzero for c in checks))


def pluecker(p: ModuliPoint, idx) -> FieldScalar:
    """The Plücker coordinate P_idx: the minor at the chosen columns.

    `idx` must be strictly increasing 1-based indices, k of them.
    """
    idx = tuple(idx)
    fam = p.family
    if len(idx) != fam.k:
        raise ValueError(f"need {fam.k} indices for {fam.name}, got {len(idx)}")
    if any(not isinstance(i, int) or not 1 <= i <= fam.n_columns for i in idx):
        raise ValueError(f"indices out of range 1..{fam.n_columns}: {idx}")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError(f"indices must be strictly increasing: {idx}")
    return determinant(Matrix.from_columns([p.columns[i - 1] for i in idx], p.field))


def point_to_json(p: ModuliPoint) -> dict:
    return {
        "family": p.family.name,
        "field": field_to_json(p.field),
        "columns": [[format_scalar(x) for x in c] for c in p.columns],
    }


def point_from_json(data: dict) -> ModuliPoint:
    if not isinstance(data, dict):
        raise ValueError("point file must be a JSON object")
    missing = {"family", "field", "columns"} - set(data)
    if missing:
        raise ValueError(f"point file missing keys: {sorted(missing)}")
    family = get_family(data["family"])
    field = field_from_json(data["field"])
    raw = data["columns"]
    if not isinstance(raw, list) or not all(isinstance(c, list) for c in raw):
        raise ValueError("columns must be a list of lists of scalar strings")
    columns = tuple(tuple(field.parse(x) for x in c) for c in raw)
    return ModuliPoint(family, field, columns)


def point_dumps(p: ModuliPoint) -> str:
    return json.dumps(point_to_json(p), indent=2) + "\n"


def point_loads(text: str) -> ModuliPoint:
    return point_from_json(json.loads(text))


RETRY_BOUND = 10_000


def random_point(family: Family, field: Field, seed) -> ModuliPoint:
    """A uniformly sampled valid point, deterministic in the seed.

    Entries are drawn uniformly (small integers over the rationals) and
    the draw is rejected until the point is valid and every loop action
    of the family is defined, so downstream actions never degenerate at
    depth one.

    Raises:
        SamplingExhausted: after 10,000 rejected draws.
    """
    rng = Random(seed)
    k, n = family.k, family.n_columns
    for _ in range(RETRY_BOUND):
        columns = tuple(
            tuple(field.random_scalar(rng) for _ in range(k)) for _ in range(n)
        )
        p = ModuliPoint(family, field, columns)
        if not validate_point(p).is_valid:
            continue
        if _loop_actions_defined(p):
            return p
    raise SamplingExhausted(family, seed, RETRY_BOUND)


def _loop_actions_defined(p: ModuliPoint) -> bool:
    from . import monodromy

    try:
        if p.family is T36:
            monodromy.act_sigma1(p)
            monodromy.act_sigma1(monodromy.act_shift(p, 1))
        else:
            for i in (1, 2, 3):
                monodromy.act_xi(p, i)
    except DegeneracyError:
        return False
    return True


@dataclass(frozen=True)
class FlagTuple:
    """l(β) complete flags; flag m holds the subspaces of dims 1..k-1."""

    ambient: int
    flags: tuple[tuple[Subspace, ...], ...]

    def __len__(self) -> int:
        return len(self.flags)


def flags_from_point(p: ModuliPoint) -> FlagTuple:
    """Rebuild the flag chain along the family's base braid word.

    Flag m (1-based, m = 1..(k-1)N) has level-d subspace spanned by the
    d consecutive columns starting at v_j with j = floor((m-d)/(k-1))+1,
    indices cyclic.  For k = 3 this is the scheme V(1)_{2j-1} = V(1)_{2j}
    = <v_j>, V(2)_{2j} = V(2)_{2j+1} = <v_j, v_{j+1}>; level d changes
    exactly at the crossings of σ_d in the base word.

    Raises:
        InvalidPoint: if some cyclic consecutive minor vanishes.
    """
    report = validate_point(p)
    if not report.is_valid:
        bad = [m.indices for m in report.minors if not m.nonzero]
        raise InvalidPoint(f"vanishing cyclic minors at {bad}")
    fam = p.family
    k, n = fam.k, fam.n_columns
    length = (k - 1) * n
    flags = []
    for m in range(1, length + 1):
        levels = []
        for d in range(1, k):
            j = (m - d) // (k - 1) + 1
            vectors = [p.col(j + t) for t in range(d)]
            levels.append(Subspace.span(vectors, k, p.field))
        flags.append(tuple(levels))
    return FlagTuple(k, tuple(flags))


def validate_bott_samelson(f: FlagTuple, w) -> bool:
    """Check the open-cell conditions of the flag chain against a word.

    True iff every flag is a full chain of nested subspaces of dims
    1..k-1, and each cyclically adjacent pair (m, m+1) differs in its
    i_{m+1}-dimensional subspace and only there (pair (l, 1) reads the
    first letter).  Differing at the prescribed level keeps adjacent
    flags off the fat diagonal.

    Raises:
        ValueError: if len(f) != len(w).
    """
    letters = w.letters
    length = len(letters)
    if len(f.flags) != length:
        raise ValueError(
            f"length mismatch: {len(f.flags)} flags vs word of length {length}"
        )
    k = f.ambient
    for flag in f.flags:
        if len(flag) != k - 1:
            return False
        if any(flag[d].dim != d + 1 for d in range(k - 1)):
            return False
        if any(not flag[d + 1].contains_subspace(flag[d]) for d in range(k - 2)):
            return False
    for m in range(length):
        here, there = f.flags[m], f.flags[(m + 1) % length]
        level = letters[(m + 1) % length]  # i_{m+1}, cyclically
        for d in range(1, k):
            if d == level:
                if here[d - 1] == there[d - 1]:
                    return False
            elif here[d - 1] != there[d - 1]:
                return False
    return True
