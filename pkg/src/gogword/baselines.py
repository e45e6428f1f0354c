"""Naive free-product solvers and the word families that make them quadratic.

Both baselines work on the syllable decomposition of a word over the vertex
letters of a graph of groups with trivial edge groups (a free product).
Tree edge letters and dummy letters are dropped since they represent the
identity there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .oracles import ChargeMeter
from .words import GroupSchema, SchemaError, Verdict, Word


@dataclass
class BaselineResult:
    verdict: Verdict
    charge: int
    rounds: int = 1

    @property
    def trivial(self) -> bool:
        return self.verdict is Verdict.TRIVIAL


def syllables(schema: GroupSchema, word: Sequence[str]) -> list:
    """Maximal alternating decomposition into ``(vertex, letters)`` pairs."""
    out: list = []
    for s in word:
        gen = schema.letters.get(s)
        if gen is None:
            raise SchemaError(f"letter {s!r} is not in the schema")
        if gen.kind != "vertex":
            if gen.kind == "edge" and not schema.edges[s].in_tree:
                raise SchemaError(f"edge letter {s!r} is not a tree edge; baselines need a free product")
            continue
        if out and out[-1][0] == gen.home:
            out[-1][1].append(s)
        else:
            out.append((gen.home, [s]))
    return out


def _merge(sylls: list) -> list:
    out: list = []
    for v, letters in sylls:
        if out and out[-1][0] == v:
            out[-1][1].extend(letters)
        else:
            out.append((v, list(letters)))
    return out


def many_iterations(schema: GroupSchema, word: Sequence[str], meter: ChargeMeter | None = None) -> BaselineResult:
    """Delete every trivial syllable, merge neighbours, repeat until stable.

    One round tests every syllable; the word is trivial when nothing is left
    and nontrivial when a round deletes nothing.
    """
    meter = meter if meter is not None else ChargeMeter()
    start = meter.total
    oracles = schema.oracles
    sylls = syllables(schema, word)
    rounds = 0
    while sylls:
        rounds += 1
        kept = [(v, letters) for v, letters in sylls if not oracles[v].test(letters, meter)]
        if len(kept) == len(sylls):
            return BaselineResult(Verdict.NONTRIVIAL, meter.total - start, rounds)
        sylls = _merge(kept)
    return BaselineResult(Verdict.TRIVIAL, meter.total - start, rounds)


def one_iteration(schema: GroupSchema, word: Sequence[str], meter: ChargeMeter | None = None) -> BaselineResult:
    """Single left-to-right pass keeping a reduced prefix.

    Each syllable is merged into the last kept syllable when they share a
    factor, and the merged syllable is dropped if trivial; otherwise it is
    appended when nontrivial.
    """
    meter = meter if meter is not None else ChargeMeter()
    start = meter.total
    oracles = schema.oracles
    out: list = []
    for v, letters in syllables(schema, word):
        if out and out[-1][0] == v:
            candidate = out[-1][1] + letters
            if oracles[v].test(candidate, meter):
                out.pop()
            else:
                out[-1] = (v, candidate)
        elif not oracles[v].test(letters, meter):
            out.append((v, letters))
    verdict = Verdict.NONTRIVIAL if out else Verdict.TRIVIAL
    return BaselineResult(verdict, meter.total - start, 1)


def gen_slow_many(k: int, a: str = "a", b: str = "b") -> Word:
    """``(a b)^k (b^-1 a^-1)^k``: trivial, and many_iterations needs 2k rounds."""
    if k < 1:
        raise ValueError("k must be positive")
    return (a, b) * k + (b + "^-1", a + "^-1") * k


def gen_slow_one(k: int, a: str = "a", b: str = "b") -> Word:
    """``a^k (b b^-1 a)^(k-1)``: every prefix a_1..a_i is nontrivial."""
    if k < 1:
        raise ValueError("k must be positive")
    return (a,) * k + (b, b + "^-1", a) * (k - 1)


def syllable_reduction_verdict(schema: GroupSchema, word: Sequence[str]) -> Verdict:
    """Brute-force oracle: delete a trivial syllable, merge neighbours, repeat.

    Syllables left of a deletion are unchanged, so the scan resumes at the
    merged syllable.
    """
    sylls = syllables(schema, word)
    j = 0
    while j < len(sylls):
        v, letters = sylls[j]
        if schema.oracles[v].is_trivial(letters):
            sylls = sylls[:max(j - 1, 0)] + _merge(sylls[max(j - 1, 0):j] + sylls[j + 1:j + 2]) + sylls[j + 2:]
            j = max(j - 1, 0)
        else:
            j += 1
    return Verdict.NONTRIVIAL if sylls else Verdict.TRIVIAL
