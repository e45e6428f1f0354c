"""Middle derivations and the logarithmic driver loop.

A middle derivation scans a normal word once, left to right, building the
output ``a``.  When a piece is reducible it is conjugated across its edge into
the running element ``w_cur`` and the scan keeps absorbing neighbours while a
counter, started at the piece's derived length, stays non-negative.  Every
reducible piece that survives a derivation at least doubles in derived
length, so ``ceil(log2 m)`` derivations leave a shortened word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .edges import UNIT, EdgeNormalForm, edge_membership, enf_conjugate_across, enf_multiply, enf_to_word
from .normal_form import NormalWord, check_normal_word, is_reducible, normalize, shortened_verdict
from .oracles import ChargeMeter
from .words import DUMMY, DUMMY_BAR, GroupSchema, SchemaError, Verdict

TRIVIAL_EDGES = "trivial-edges"
ADMISSIBLE = "admissible"
ENGINES = (TRIVIAL_EDGES, ADMISSIBLE)


class InvariantViolation(RuntimeError):
    """An internal bookkeeping check failed; this is a bug, not bad input."""


class EngineMismatch(SchemaError):
    pass


@dataclass
class DerivationTrace:
    """Analysis data for one middle derivation.

    ``split_sequence[j]`` is the index of the input edge that ends output
    piece j (so it starts at 0 and ends at n).  ``counters`` holds, per
    instigator, the initial counter value and the amounts subtracted.
    """

    split_sequence: list = field(default_factory=list)
    changed: list = field(default_factory=list)
    i_start: list = field(default_factory=list)
    i_core: list = field(default_factory=list)
    i_red: list = field(default_factory=list)
    counters: list = field(default_factory=list)


# -- edge algebras -----------------------------------------------------------
#
# The derivation loop is shared by both engines; what differs is how the
# running element w_cur is stored and how membership is tested.


class _TrivialEdges:
    """Edge groups are trivial: w_cur is always the identity."""

    def __init__(self, schema: GroupSchema, meter: ChargeMeter):
        self.schema = schema
        self.meter = meter

    def member(self, edge, word):
        oracle = self.schema.oracles[self.schema.target(edge)]
        return UNIT if oracle.test(word, self.meter) else None

    def cross(self, edge, g):
        return UNIT

    def absorb(self, t_a, cur_edge, cur, w_a, u):
        return self.member(t_a, w_a + u)

    def spell(self, edge, g):
        return ()


class _Admissible:
    """w_cur is an edge normal form for the edge it currently sits on."""

    def __init__(self, schema: GroupSchema, meter: ChargeMeter):
        self.schema = schema
        self.meter = meter
        self.frames = schema.frames
        self.pres = {v: getattr(schema.oracles.get(v), "presentation", None) for v in schema.vertices}

    def member(self, edge, word):
        self.meter.charge(len(word))
        return edge_membership(self.frames[edge], self.pres[self.schema.target(edge)], word)

    def cross(self, edge, g):
        return enf_conjugate_across(self.frames[edge], g)

    def absorb(self, t_a, cur_edge, cur, w_a, u):
        frame = self.frames[t_a]
        if cur_edge == t_a:
            # w_cur is already in the edge group of t_a, so the product is
            # in it exactly when w_a and u are.
            ga = self.member(t_a, w_a)
            if ga is not None:
                gu = self.member(t_a, u)
                if gu is None:
                    return None
                return enf_multiply(frame, enf_multiply(frame, ga, cur), gu)
        # c is central, so the c-part of w_cur can be left out of the test.
        k, l, h = cur
        probe = w_a + list(enf_to_word(self.frames[cur_edge], (0, l, h))) + u
        g = self.member(t_a, probe)
        if g is None:
            return None
        return EdgeNormalForm(g.k + k, g.l, g.h)

    def spell(self, edge, g):
        return enf_to_word(self.frames[edge], g)


def _algebra(schema: GroupSchema, engine: str, meter: ChargeMeter):
    if engine == TRIVIAL_EDGES:
        if schema.is_admissible:
            raise EngineMismatch("trivial-edges engine needs a schema without edge frames")
        return _TrivialEdges(schema, meter)
    if engine == ADMISSIBLE:
        if not schema.is_admissible or set(schema.frames) != set(schema.edges):
            raise EngineMismatch("admissible engine needs an edge frame for every edge")
        for v in schema.vertices:
            if getattr(schema.oracles.get(v), "presentation", None) is None:
                raise EngineMismatch(f"admissible engine needs a central extension oracle at {v!r}")
        return _Admissible(schema, meter)
    raise EngineMismatch(f"unknown engine {engine!r}; expected one of {', '.join(ENGINES)}")


def _middle_derive(schema: GroupSchema, w: NormalWord, alg, trace: DerivationTrace | None = None):
    pieces, edges, lengths = w.pieces, w.edges, w.lengths
    n = len(pieces)
    bar = schema.bar
    a_edges = [edges[0]]
    a_pieces: list = []
    a_lengths: list = []
    a_split = [0]
    was_trivial = True

    i = 0
    while True:
        # AlgStep: a is full and ends with t_{i}
        i += 1
        if i == n + 1:
            break
        u, lu = pieces[i - 1], lengths[i - 1]
        t_prev, t_next = edges[i - 1], edges[i]
        if trace is not None:
            trace.i_start.append(i)
        g = None
        if t_prev not in (DUMMY, DUMMY_BAR) and bar(t_prev) == t_next:
            g = alg.member(t_prev, u)
        if g is None:
            a_pieces.append(list(u))
            a_lengths.append(lu)
            a_edges.append(t_next)
            a_split.append(i)
            continue

        was_trivial = False
        i_start = i
        c = lu
        if trace is not None:
            trace.i_core.append(i_start)
            difs: list = []
            trace.counters.append((i_start, c, difs))
        cur = alg.cross(t_prev, g)
        cur_edge = t_next
        cur_len = lu
        a_edges.pop()
        a_split.pop()

        while True:
            # InnerStep: a is not full; a w_cur w_{i+1} is the current word
            i += 1
            u, lu = pieces[i - 1], lengths[i - 1]
            t_i = edges[i]
            l_wa = a_lengths[-1]
            c_dif = min(lu + l_wa, c + 1)
            c -= c_dif
            if trace is not None:
                difs.append(c_dif)
            merged = None
            if c >= 0:
                t_a = a_edges[-1]
                if t_a not in (DUMMY, DUMMY_BAR) and t_a == bar(t_i):
                    merged = alg.absorb(t_a, cur_edge, cur, a_pieces[-1], u)
            elif trace is not None:
                trace.i_red.append((i_start, i))
            if merged is None:
                a_pieces[-1].extend(alg.spell(cur_edge, cur))
                a_pieces[-1].extend(u)
                a_lengths[-1] += cur_len + lu
                a_edges.append(t_i)
                a_split.append(i)
                break
            cur = alg.cross(t_a, merged)
            cur_edge = t_i
            cur_len += l_wa + lu
            a_edges.pop()
            a_split.pop()
            a_pieces.pop()
            a_lengths.pop()

    out = NormalWord(a_pieces, a_edges, a_lengths)
    if trace is not None:
        trace.split_sequence = a_split
        trace.changed = [a_split[j + 1] - a_split[j] != 1 for j in range(len(a_pieces))]
    return out, was_trivial


def middle_derive_trivial_edges(schema: GroupSchema, w: NormalWord, meter: ChargeMeter | None = None,
                                trace: DerivationTrace | None = None):
    """One middle derivation for a graph of groups with trivial edge groups.

    Returns ``(derived word, was_trivial)``; the input is not modified.
    """
    alg = _algebra(schema, TRIVIAL_EDGES, meter or ChargeMeter())
    return _middle_derive(schema, w, alg, trace)


def middle_derive_admissible(schema: GroupSchema, w: NormalWord, meter: ChargeMeter | None = None,
                             trace: DerivationTrace | None = None):
    """One middle derivation for an admissible graph of groups."""
    alg = _algebra(schema, ADMISSIBLE, meter or ChargeMeter())
    return _middle_derive(schema, w, alg, trace)


# -- driver ------------------------------------------------------------------


@dataclass
class SolveReport:
    verdict: Verdict
    iterations: int
    charge: int
    oracle_calls: int
    input_length: int  # |w^0|, the length of the normalized word
    bound: int  # ceil(log2 |w^0|)
    invariant_log: list = field(default_factory=list)

    @property
    def trivial(self) -> bool:
        return self.verdict is Verdict.TRIVIAL


def sprawl_constant(schema: GroupSchema) -> int:
    if schema.is_admissible:
        return max(f.K for f in schema.frames.values())
    return 1


def log2_ceil(m: int) -> int:
    return (m - 1).bit_length() if m > 1 else 0


def solve(schema: GroupSchema, word: Sequence[str], engine: str | None = None, check_invariants: bool = False,
          meter: ChargeMeter | None = None) -> SolveReport:
    """Decide whether ``word`` is trivial in the fundamental group of ``schema``.

    The invariant log always records, per derivation, the sum of derived
    lengths and the largest ratio |u_i| / l_i.  With ``check_invariants`` the
    structural, non-sprawling and doubling properties are verified after every
    derivation and :class:`InvariantViolation` is raised on failure.
    """
    if engine is None:
        engine = ADMISSIBLE if schema.is_admissible else TRIVIAL_EDGES
    meter = meter if meter is not None else ChargeMeter()
    alg = _algebra(schema, engine, meter)
    schema.check_word(word)
    if all(s in (DUMMY, DUMMY_BAR) for s in word):
        return SolveReport(Verdict.TRIVIAL, 0, 0, 0, 0, 0)

    w = normalize(schema, word)
    m = len(w)
    bound = log2_ceil(m)
    K = sprawl_constant(schema)
    log: list = []
    iterations = 0
    while True:
        if w.path_length == 1:
            verdict = shortened_verdict(schema, w, meter=meter)
            break
        if iterations == bound:
            if check_invariants:
                _check_shortened(schema, w)
            verdict = Verdict.NONTRIVIAL
            break
        w, was_trivial = _middle_derive(schema, w, alg)
        iterations += 1
        total = sum(w.lengths)
        ratio = max(len(u) / l for u, l in zip(w.pieces, w.lengths))
        log.append({"iteration": iterations, "sum_lengths": total, "max_ratio": ratio,
                    "path_length": w.path_length, "was_trivial": was_trivial})
        if total != m - 1:
            raise InvariantViolation(f"derived lengths sum to {total}, expected {m - 1}")
        if check_invariants:
            _check_derivation(schema, w, iterations, K)
        if was_trivial:
            verdict = Verdict.NONTRIVIAL
            break
    return SolveReport(verdict, iterations, meter.total, meter.calls, m, bound, log)


def _check_derivation(schema, w, iteration, K):
    problems = check_normal_word(schema, w)
    if problems:
        raise InvariantViolation("; ".join(problems))
    for i, (u, l) in enumerate(zip(w.pieces, w.lengths), 1):
        if len(u) > K * l:
            raise InvariantViolation(f"piece {i} sprawls: |u| = {len(u)} > {K} * {l}")
    for i in range(1, w.path_length + 1):
        if w.lengths[i - 1] < 2 ** iteration and is_reducible(schema, w, i) is not None:
            raise InvariantViolation(f"reducible piece {i} has derived length {w.lengths[i - 1]} < 2^{iteration}")


def _check_shortened(schema, w):
    for i in range(1, w.path_length + 1):
        if is_reducible(schema, w, i) is not None:
            raise InvariantViolation(f"word is not shortened after the iteration bound (piece {i})")


# -- reference reducer ---------------------------------------------------------


def default_conjugator(schema: GroupSchema) -> Callable:
    """``conjugate(edge, word)`` giving a word for ``t word t^-1`` on the far side."""
    if not schema.is_admissible:
        return lambda edge, word: ()
    member = _Admissible(schema, ChargeMeter()).member

    def conjugate(edge, word):
        g = member(edge, word)
        return enf_to_word(schema.frames[schema.bar(edge)], enf_conjugate_across(schema.frames[edge], g))

    return conjugate


def reference_reduce(schema: GroupSchema, w: NormalWord, is_member: Callable | None = None,
                     conjugate: Callable | None = None) -> NormalWord:
    """Reduce reducible pieces one at a time until none is left.

    ``is_member(edge, word)`` decides membership in the edge group of ``edge``
    and ``conjugate(edge, word)`` returns a word equal to ``t word t^-1``.
    After a reduction only the merged piece can have become reducible, so the
    scan resumes there.
    """
    if is_member is None:
        member = (_Admissible if schema.is_admissible else _TrivialEdges)(schema, ChargeMeter()).member
        is_member = lambda edge, word: member(edge, word) is not None  # noqa: E731
    if conjugate is None:
        conjugate = default_conjugator(schema)
    w = w.copy()
    i = 2
    while i < w.path_length:
        t_prev, t_next = w.edges[i - 1], w.edges[i]
        u = w.pieces[i - 1]
        if t_prev in schema.edges and schema.bar(t_prev) == t_next and is_member(t_prev, u):
            merged = w.pieces[i - 2] + list(conjugate(t_prev, u)) + w.pieces[i]
            w.pieces[i - 2:i + 1] = [merged]
            w.lengths[i - 2:i + 1] = [sum(w.lengths[i - 2:i + 1])]
            del w.edges[i - 1:i + 1]
            i = max(2, i - 1)
        else:
            i += 1
    return w


def reference_solve(schema: GroupSchema, word: Sequence[str], is_member=None, conjugate=None) -> Verdict:
    """Naive decision procedure used as a test oracle."""
    w = reference_reduce(schema, normalize(schema, word), is_member, conjugate)
    return shortened_verdict(schema, w)
