"""Reduced words of Z3 * Z2, relation reports, and separation witnesses.

The T36 loop generators induce point maps a (shift by one column),
a² (shift by two) and b (sigma1 after a shift).  Words alternate
syllables from the two free factors {a, a2} and {b}; a word is reduced
when no two adjacent syllables come from the same factor.

The observable is Δ = P_147 composed with probe words: a word w is
separated from the identity by exhibiting a probe u and a sampled point
p with Δ(u(w(p))) ≠ Δ(u(p)).  Over a prime field such an inequality is
an exact certificate, and every witness re-verifies over the rationals
by lifting the point entries to integers, so no Schwartz-Zippel caveat
remains.

All reports are deterministic functions of their parameters and
serialize to JSON with a fixed key order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .fields import (
    DEFAULT_PRIME,
    Field,
    FieldScalar,
    ModP,
    PrimeField,
    QQ,
    field_to_json,
    format_scalar,
)
from .linalg import DegeneracyError
from .moduli import ModuliPoint, T36, T44, point_to_json, pluecker, random_point
from .monodromy import act_shift, act_word, act_xi
from . import monodromy

SYLLABLES = ("a", "a2", "b")
_FACTOR = {"a": "rotation", "a2": "rotation", "b": "involution"}
_SYLLABLE_TOKEN = {"a": "A", "a2": "A2", "b": "B"}

#: Reduced words are tuples of syllables; () is the empty word.
Syllables = tuple[str, ...]

DELTA_INDEX = (1, 4, 7)


def reduced_words(max_syllables: int) -> tuple[Syllables, ...]:
    """All reduced words with at most `max_syllables` syllables,
    shortest first, options in (a, a2, b) order; includes the empty word."""
    if max_syllables < 0:
        raise ValueError("max_syllables must be >= 0")
    out: list[Syllables] = [()]
    layer: list[Syllables] = [()]
    for _ in range(max_syllables):
        nxt = []
        for w in layer:
            last = _FACTOR[w[-1]] if w else None
            for s in SYLLABLES:
                if _FACTOR[s] != last:
                    nxt.append(w + (s,))
        out.extend(nxt)
        layer = nxt
    return tuple(out)


def is_reduced(word: Syllables) -> bool:
    return all(s in _FACTOR for s in word) and all(
        _FACTOR[x] != _FACTOR[y] for x, y in zip(word, word[1:])
    )


def word_label(word: Syllables) -> str:
    """Human/JSON label; the empty word renders as "e"."""
    return " ".join(word) if word else "e"


def apply_syllables(p: ModuliPoint, word: Syllables) -> ModuliPoint:
    return act_word(p, tuple(_SYLLABLE_TOKEN[s] for s in word))


def delta(p: ModuliPoint) -> FieldScalar:
    return pluecker(p, DELTA_INDEX)


def _sample_points(family, field: Field, n_points: int, seed) -> tuple[ModuliPoint, ...]:
    rng = Random(seed)
    return tuple(
        random_point(family, field, rng.randrange(2**62)) for _ in range(n_points)
    )


def _resolve_field(field: Field | None) -> Field:
    return PrimeField(DEFAULT_PRIME) if field is None else field


class _ProbeCache:
    """Lazy Δ(u(p)) values per (point, probe); degenerate entries are None."""

    def __init__(self, points: tuple[ModuliPoint, ...]):
        self.points = points
        self._values: dict[tuple[int, Syllables], FieldScalar | None] = {}
        self.degenerate_evals = 0

    def value(self, idx: int, probe: Syllables):
        key = (idx, probe)
        if key not in self._values:
            try:
                self._values[key] = delta(apply_syllables(self.points[idx], probe))
            except DegeneracyError:
                self._values[key] = None
                self.degenerate_evals += 1
        return self._values[key]


@dataclass(frozen=True)
class SeparationWitness:
    """A probe u, a point p, and Δ(u(w(p))) ≠ Δ(u(p)) certifying that w
    acts nontrivially."""

    word: Syllables
    probe: Syllables
    point: ModuliPoint
    lhs: FieldScalar  # Δ(probe(word(point)))
    rhs: FieldScalar  # Δ(probe(point))

    def replay(self) -> bool:
        """Recompute both values exactly and compare with the stored pair."""
        lhs = delta(apply_syllables(apply_syllables(self.point, self.word), self.probe))
        rhs = delta(apply_syllables(self.point, self.probe))
        return lhs == self.lhs and rhs == self.rhs and lhs != rhs

    def to_json(self) -> dict:
        return {
            "word": word_label(self.word),
            "probe": word_label(self.probe),
            "lhs": format_scalar(self.lhs),
            "rhs": format_scalar(self.rhs),
            "point": point_to_json(self.point),
        }


def lift_point_to_q(p: ModuliPoint) -> ModuliPoint:
    """Lift a prime-field point to the rationals entry by entry."""
    if p.field == QQ:
        return p
    columns = tuple(
        tuple(Fraction(x.value) for x in c) for c in p.columns
    )
    return ModuliPoint(p.family, QQ, columns)


def reverify_witness_q(witness: SeparationWitness) -> dict:
    """Replay a witness over ℚ on the lifted point.

    A value that is nonzero mod p lifts to a nonzero rational, so a
    prime-field witness always stays a witness: the two rational values
    are distinct and reduce mod p to the stored pair.
    """
    q = lift_point_to_q(witness.point)
    lhs = delta(apply_syllables(apply_syllables(q, witness.word), witness.probe))
    rhs = delta(apply_syllables(q, witness.probe))
    consistent = True
    if isinstance(witness.lhs, ModP):
        p = witness.lhs.modulus
        consistent = (
            _reduces_to(lhs, witness.lhs, p) and _reduces_to(rhs, witness.rhs, p)
        )
    return {
        "lhs": format_scalar(lhs),
        "rhs": format_scalar(rhs),
        "distinct": lhs != rhs,
        "consistent_with_fp": consistent,
        "ok": lhs != rhs and consistent,
    }


def _reduces_to(x: Fraction, r: ModP, p: int) -> bool:
    den = x.denominator % p
    if den == 0:
        return False
    return x.numerator % p == r.value * den % p


def separate(word: Syllables, probe_budget: int = 4, n_points: int = 32,
             seed=11, field: Field | None = None,
             _cache: _ProbeCache | None = None) -> SeparationWitness | None:
    """Search for a separation witness for a nonempty reduced word.

    Probes are tried shortest first, points in sampling order; the first
    witness found is returned, so results are deterministic in the seed.
    Returns None if the budget is exhausted (sound, not complete).
    """
    word = tuple(word)
    if not word:
        raise ValueError("the empty word cannot be separated from the identity")
    if not is_reduced(word):
        raise ValueError(f"word {word!r} is not reduced")
    field = _resolve_field(field)
    cache = _cache if _cache is not None else _ProbeCache(
        _sample_points(T36, field, n_points, seed)
    )
    probes = reduced_words(probe_budget)
    images: dict[int, ModuliPoint | None] = {}
    for probe in probes:
        for idx in range(len(cache.points)):
            if idx not in images:
                try:
                    images[idx] = apply_syllables(cache.points[idx], word)
                except DegeneracyError:
                    images[idx] = None
                    cache.degenerate_evals += 1
            moved = images[idx]
            if moved is None:
                continue
            rhs = cache.value(idx, probe)
            if rhs is None:
                continue
            try:
                lhs = delta(apply_syllables(moved, probe))
            except DegeneracyError:
                cache.degenerate_evals += 1
                continue
            if lhs != rhs:
                return SeparationWitness(word, probe, cache.points[idx], lhs, rhs)
    return None


@dataclass(frozen=True)
class RelationCheck:
    relation: str
    probe: Syllables
    passes: int
    failures: int

    @property
    def all_pass(self) -> bool:
        return self.failures == 0


@dataclass(frozen=True)
class RelationReport:
    n_points: int
    seed: object
    probe_budget: int
    field: Field
    resamples: int
    checks: tuple[RelationCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.all_pass for c in self.checks)

    def check(self, relation: str, probe: Syllables) -> RelationCheck:
        probe = tuple(probe)
        for c in self.checks:
            if c.relation == relation and c.probe == probe:
                return c
        raise KeyError((relation, probe))

    def to_json(self) -> dict:
        return {
            "n_points": self.n_points,
            "seed": self.seed,
            "probe_budget": self.probe_budget,
            "field": field_to_json(self.field),
            "resamples": self.resamples,
            "all_pass": self.all_pass,
            "checks": [
                {
                    "relation": c.relation,
                    "probe": word_label(c.probe),
                    "passes": c.passes,
                    "failures": c.failures,
                    "all_pass": c.all_pass,
                }
                for c in self.checks
            ],
        }


def verify_relations(n_points: int = 32, seed=7, field: Field | None = None,
                     probe_budget: int = 2) -> RelationReport:
    """Check the order relations a³ and b² on Δ-probe observables.

    For each sampled point p and probe u: compares Δ(u(a³(p))) with
    Δ(u(p)) and Δ(u(b²(p))) with Δ(u(p)).  a³ is the shift by three
    columns and commutes with every generator window, so its checks pass
    at every probe.  b² fixes the unreplaced columns but rescales
    columns 2, 5, 8 by ratios of consecutive minors, so only probes
    whose Δ-pullback avoids the rescaled columns (the empty probe, pure
    b-powers) pass; the report records each probe's outcome.
    """
    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    field = _resolve_field(field)
    probes = reduced_words(probe_budget)
    rng = Random(seed)
    results: dict[tuple[str, Syllables], list[int]] = {
        (rel, u): [0, 0] for rel in ("a3", "b2") for u in probes
    }
    resamples = 0
    collected = 0
    while collected < n_points:
        p = random_point(T36, field, rng.randrange(2**62))
        try:
            rows = _relation_rows(p, probes)
        except DegeneracyError:
            resamples += 1
            continue
        collected += 1
        for key, passed in rows:
            results[key][0 if passed else 1] += 1
    checks = tuple(
        RelationCheck(rel, u, results[(rel, u)][0], results[(rel, u)][1])
        for rel in ("a3", "b2")
        for u in probes
    )
    return RelationReport(n_points, seed, probe_budget, field, resamples, checks)


def _relation_rows(p: ModuliPoint, probes) -> list[tuple[tuple[str, Syllables], bool]]:
    a3p = act_shift(p, 3)
    b2p = apply_syllables(p, ("b",))
    b2p = apply_syllables(b2p, ("b",))
    rows = []
    for u in probes:
        base = delta(apply_syllables(p, u))
        rows.append((("a3", u), delta(apply_syllables(a3p, u)) == base))
        rows.append((("b2", u), delta(apply_syllables(b2p, u)) == base))
    return rows


@dataclass(frozen=True)
class SweepEntry:
    word: Syllables
    witness: SeparationWitness | None
    q_reverify: dict | None


@dataclass(frozen=True)
class SweepReport:
    max_syllables: int
    probe_budget: int
    n_points: int
    seed: object
    field: Field
    entries: tuple[SweepEntry, ...]
    degenerate_evals: int

    @property
    def total_words(self) -> int:
        return len(self.entries)

    @property
    def separated(self) -> int:
        return sum(1 for e in self.entries if e.witness is not None)

    @property
    def unseparated_words(self) -> tuple[Syllables, ...]:
        return tuple(e.word for e in self.entries if e.witness is None)

    @property
    def all_separated(self) -> bool:
        return self.separated == self.total_words

    @property
    def all_q_verified(self) -> bool:
        return all(
            e.q_reverify is None or e.q_reverify["ok"]
            for e in self.entries
            if e.witness is not None
        )

    def to_json(self) -> dict:
        return {
            "max_syllables": self.max_syllables,
            "probe_budget": self.probe_budget,
            "n_points": self.n_points,
            "seed": self.seed,
            "field": field_to_json(self.field),
            "total_words": self.total_words,
            "separated": self.separated,
            "fraction_separated": f"{self.separated}/{self.total_words}",
            "all_separated": self.all_separated,
            "unseparated_words": [word_label(w) for w in self.unseparated_words],
            "degenerate_evals": self.degenerate_evals,
            "witnesses": [
                {
                    "word": word_label(e.word),
                    "separated": e.witness is not None,
                    **(
                        {
                            "witness": e.witness.to_json(),
                            "q_reverify": e.q_reverify,
                        }
                        if e.witness is not None
                        else {}
                    ),
                }
                for e in self.entries
            ],
        }


def faithfulness_sweep(max_syllables: int = 6, probe_budget: int = 4,
                       n_points: int = 32, seed=11,
                       field: Field | None = None,
                       reverify_q: bool = True) -> SweepReport:
    """Run separate() on every nontrivial reduced word up to the budget.

    All words share one deterministic point sample and probe table, so
    each word's outcome equals a standalone separate() call with the
    same seed.  Found witnesses are re-verified over ℚ when the sample
    field is a prime field.
    """
    if max_syllables < 1:
        raise ValueError("max_syllables must be >= 1")
    field = _resolve_field(field)
    cache = _ProbeCache(_sample_points(T36, field, n_points, seed))
    entries = []
    for word in reduced_words(max_syllables):
        if not word:
            continue
        witness = separate(word, probe_budget, n_points, seed, field, _cache=cache)
        q_report = None
        if witness is not None and reverify_q and isinstance(field, PrimeField):
            q_report = reverify_witness_q(witness)
        entries.append(SweepEntry(word, witness, q_report))
    return SweepReport(
        max_syllables, probe_budget, n_points, seed, field,
        tuple(entries), cache.degenerate_evals,
    )


PLUECKER_SET = (
    (1, 3, 7, 8),
    (2, 3, 4, 8),
    (2, 3, 6, 7),
    (4, 6, 7, 8),
    (3, 4, 5, 7),
    (2, 3, 4, 7),
    (2, 3, 7, 8),
    (3, 6, 7, 8),
    (3, 4, 6, 7),
)

XI_REPORT_WORDS = (
    (1,), (2,), (3,), (1, 2, 1), (2, 1, 2), (3, 2), (3, 2, 1),
)

# Output slots of the replaced columns u1, u2 per generator (1-based).
_XI_UPOS = {1: (2, 6), 2: (3, 7), 3: (4, 8)}


def xi_structural_ok(before: ModuliPoint, i: int, after: ModuliPoint) -> bool:
    """Post-hoc check of one xi step: each replaced column lies in both
    prescribed subspaces and satisfies its wedge normalization."""
    from .linalg import Subspace, wedge

    specs, _ = monodromy._XI_TABLE[i]
    k = before.family.k
    for (label, pair, other), upos in zip(specs, _XI_UPOS[i]):
        u = after.columns[upos - 1]
        va, vb = before.col(pair[0]), before.col(pair[1])
        plane = Subspace.span([va, vb], k, before.field)
        target = Subspace.span([before.col(t) for t in other], k, before.field)
        if not (plane.contains(u) and target.contains(u)):
            return False
        if wedge(va, vb) != wedge(vb, u):
            return False
    return True


def _xi_word_label(word: tuple[int, ...]) -> str:
    return " ".join(f"X{i}" for i in word)


@dataclass(frozen=True)
class XiReport:
    n_points: int
    seed: object
    field: Field
    resamples: int
    structural_all_ok: bool
    invariance: dict  # word label -> {P label -> bool}
    matches: dict  # word label -> {P label -> list of matching P labels}
    braid_comparison: dict  # P label -> {"equal": bool, "agree": int, "n": int}

    def to_json(self) -> dict:
        return {
            "n_points": self.n_points,
            "seed": self.seed,
            "field": field_to_json(self.field),
            "resamples": self.resamples,
            "structural_all_ok": self.structural_all_ok,
            "pluecker_set": [_plabel(ix) for ix in PLUECKER_SET],
            "words": [_xi_word_label(w) for w in XI_REPORT_WORDS],
            "invariance": self.invariance,
            "matches": self.matches,
            "braid_comparison": self.braid_comparison,
        }


def _plabel(idx: tuple[int, ...]) -> str:
    return "P" + "".join(str(i) for i in idx)


def xi_pluecker_report(n_points: int = 32, seed=11,
                       field: Field | None = None) -> XiReport:
    """Tabulate the Plücker set of T44 before and after each xi word.

    For every word W the report records which P in the set satisfy
    P(W(p)) = P(p) across the sample, which pulled-back values coincide
    with which other members of the set, and the per-coordinate
    comparison of X1 X2 X1 against X2 X1 X2.  Purely observational; the
    asserted part is the structural postcondition of every applied step.
    """
    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    field = _resolve_field(field)
    rng = Random(seed)
    resamples = 0
    samples = []  # per point: (base values, {word: values}, structural_ok)
    while len(samples) < n_points:
        p = random_point(T44, field, rng.randrange(2**62))
        try:
            per_word = {}
            structural = True
            for word in XI_REPORT_WORDS:
                q = p
                for i in word:
                    nxt = act_xi(q, i)
                    structural = structural and xi_structural_ok(q, i, nxt)
                    q = nxt
                per_word[word] = tuple(pluecker(q, ix) for ix in PLUECKER_SET)
        except DegeneracyError:
            resamples += 1
            continue
        base = tuple(pluecker(p, ix) for ix in PLUECKER_SET)
        samples.append((base, per_word, structural))

    invariance = {}
    matches = {}
    for word in XI_REPORT_WORDS:
        inv = {}
        match = {}
        for col, ix in enumerate(PLUECKER_SET):
            inv[_plabel(ix)] = all(
                per_word[word][col] == base[col] for base, per_word, _ in samples
            )
            match[_plabel(ix)] = [
                _plabel(other)
                for pos, other in enumerate(PLUECKER_SET)
                if all(
                    per_word[word][col] == base[pos]
                    for base, per_word, _ in samples
                )
            ]
        invariance[_xi_word_label(word)] = inv
        matches[_xi_word_label(word)] = match

    braid = {}
    w121, w212 = (1, 2, 1), (2, 1, 2)
    for col, ix in enumerate(PLUECKER_SET):
        agree = sum(
            1 for _, per_word, _ in samples
            if per_word[w121][col] == per_word[w212][col]
        )
        braid[_plabel(ix)] = {
            "equal": agree == len(samples),
            "agree": agree,
            "n": len(samples),
        }

    return XiReport(
        n_points, seed, field, resamples,
        all(s for _, _, s in samples),
        invariance, matches, braid,
    )


def report_dumps(report) -> str:
    """Serialize any report object with stable key order."""
    return json.dumps(report.to_json(), indent=2) + "\n"
