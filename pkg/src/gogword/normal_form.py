"""Normal words ``* u_1 t_1 u_2 ... t_{n-1} u_n *`` and their basic tests.

A normal word is kept as three parallel lists: the pieces ``u_1..u_n``, the
edge letters ``t_0..t_n`` (``t_0 = t_n = *``) and the derived lengths
``l_1..l_n``.  Piece ``u_i`` lives in the vertex group at the target of
``t_{i-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .edges import UNIT, EdgeNormalForm, edge_membership
from .oracles import ChargeMeter, VertexOracle
from .words import DUMMY, DUMMY_BAR, GroupSchema, SchemaError, Verdict, Word, format_word

Membership = Callable[[str, Sequence[str]], "EdgeNormalForm | None"]


@dataclass
class NormalWord:
    pieces: list
    edges: list
    lengths: list

    @property
    def path_length(self) -> int:
        return len(self.pieces)

    def word(self) -> Word:
        out = [self.edges[0]]
        for u, t in zip(self.pieces, self.edges[1:]):
            out.extend(u)
            out.append(t)
        return tuple(out)

    def __len__(self):
        return sum(len(u) for u in self.pieces) + len(self.edges)

    def copy(self) -> "NormalWord":
        return NormalWord([list(u) for u in self.pieces], list(self.edges), list(self.lengths))

    def dump(self) -> str:
        """Three lines: ``*u1#u2#...#un*``, the edge letters, the derived lengths."""
        pieces = "#".join(" ".join(u) for u in self.pieces)
        return "\n".join([f"*{pieces}*", " ".join(self.edges), " ".join(map(str, self.lengths))])

    def __str__(self):
        return format_word(self.word())


def normalize(schema: GroupSchema, word: Sequence[str]) -> NormalWord:
    """Insert spanning-tree paths so consecutive letters live at matching vertices.

    Dummy letters in the input are dropped; they represent the identity.
    """
    letters = schema.letters
    v = schema.base_vertex
    pieces: list = [[]]
    edges: list = [DUMMY]

    def walk(to):
        for e in schema.tree_path(v, to):
            edges.append(e)
            pieces.append([])

    for s in word:
        gen = letters.get(s)
        if gen is None:
            raise SchemaError(f"letter {s!r} is not in the schema")
        if gen.kind == "dummy":
            continue
        if gen.kind == "edge":
            walk(schema.source(s))
            edges.append(s)
            pieces.append([])
            v = schema.target(s)
        else:
            if gen.home != v:
                walk(gen.home)
                v = gen.home
            pieces[-1].append(s)
    walk(schema.base_vertex)
    edges.append(DUMMY)
    return NormalWord(pieces, edges, [len(u) + 1 for u in pieces])


def check_normal_word(schema: GroupSchema, nw: NormalWord) -> list[str]:
    """Structural problems of ``nw``; empty when it is a valid normal word."""
    problems = []
    n = len(nw.pieces)
    if n < 1:
        problems.append("path-length must be at least 1")
    if len(nw.edges) != n + 1 or len(nw.lengths) != n:
        problems.append("pieces, edges and lengths have inconsistent sizes")
        return problems
    if nw.edges[0] != DUMMY or nw.edges[-1] != DUMMY:
        problems.append("normal word must start and end with the dummy edge")
    for i, t in enumerate(nw.edges[1:-1], 1):
        if t not in schema.edges:
            problems.append(f"edge letter {i} ({t!r}) is not an edge")
    for i in range(1, n + 1):
        t_prev, t_next = nw.edges[i - 1], nw.edges[i]
        v = schema.target(t_prev)
        if schema.source(t_next) != v:
            problems.append(f"piece {i}: edges {t_prev!r} and {t_next!r} do not meet")
        for s in nw.pieces[i - 1]:
            g = schema.letters.get(s)
            if g is None or g.kind != "vertex" or g.home != v:
                problems.append(f"piece {i}: letter {s!r} not in generators of {v!r}")
                break
        if nw.lengths[i - 1] < 1:
            problems.append(f"piece {i}: derived length must be positive")
    return problems


def trivial_edge_membership(schema: GroupSchema, meter: ChargeMeter | None = None) -> Membership:
    """Membership in a trivial edge group: the word must be trivial in the vertex group."""

    def member(edge, word):
        oracle = schema.oracles[schema.target(edge)]
        return UNIT if oracle.test(word, meter) else None

    return member


def admissible_membership(schema: GroupSchema, meter: ChargeMeter | None = None) -> Membership:
    def member(edge, word):
        if meter is not None:
            meter.charge(len(word))
        pres = schema.oracles[schema.target(edge)].presentation
        return edge_membership(schema.frames[edge], pres, word)

    return member


def default_membership(schema: GroupSchema, meter: ChargeMeter | None = None) -> Membership:
    if schema.is_admissible:
        return admissible_membership(schema, meter)
    return trivial_edge_membership(schema, meter)


def is_reducible(schema: GroupSchema, nw: NormalWord, i: int, membership: Membership | None = None):
    """Witness that piece ``i`` (1-based) is reducible, or ``None``.

    Piece i is reducible when ``t_{i-1}`` is the reverse of ``t_i`` and the
    piece lies in the edge group of ``t_{i-1}``.  The witness is the edge
    normal form of the piece (``UNIT`` for trivial edge groups).
    """
    if not 1 <= i <= len(nw.pieces):
        raise IndexError(f"piece index {i} out of range 1..{len(nw.pieces)}")
    t_prev, t_next = nw.edges[i - 1], nw.edges[i]
    if t_prev in (DUMMY, DUMMY_BAR) or schema.bar(t_prev) != t_next:
        return None
    if membership is None:
        membership = default_membership(schema)
    return membership(t_prev, nw.pieces[i - 1])


def shortened_verdict(schema: GroupSchema, nw: NormalWord, oracle: VertexOracle | None = None,
                      meter: ChargeMeter | None = None) -> Verdict:
    """Decide a shortened word: trivial iff it has one piece and that piece is trivial."""
    if len(nw.pieces) != 1:
        return Verdict.NONTRIVIAL
    if oracle is None:
        oracle = schema.oracles[schema.base_vertex]
    return Verdict.TRIVIAL if oracle.test(nw.pieces[0], meter) else Verdict.NONTRIVIAL
