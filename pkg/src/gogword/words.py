"""Alphabets, words and the graph-of-groups schema.

Letters are plain interned strings.  A vertex generator ``x`` has the formal
inverse ``x^-1``; an edge letter's inverse is the letter of its reverse edge.
Words are tuples of letter names.

The dummy edge ``*`` (with formal inverse ``*^-1``) is a loop at the base
vertex that represents the identity; every normal word starts and ends with it.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

Word = tuple  # tuple[str, ...]

INV = "^-1"
DUMMY = "*"
DUMMY_BAR = "*^-1"


class SchemaError(ValueError):
    """Raised for malformed schemas, configs or words."""


class Verdict(enum.Enum):
    TRIVIAL = "TRIVIAL"
    NONTRIVIAL = "NONTRIVIAL"

    def __str__(self):
        return self.value


def formal_inverse(letter: str) -> str:
    if letter.endswith(INV):
        return letter[: -len(INV)]
    return letter + INV


def invert_word(word: Sequence[str]) -> Word:
    """Formal inverse of a word over vertex letters (no edge letters)."""
    return tuple(formal_inverse(s) for s in reversed(word))


def format_word(word: Iterable[str]) -> str:
    text = " ".join(word)
    return text if text else "1"


_TOKEN = re.compile(r"^(?P<base>[^\s^⁻¹]+?)(?:\^(?P<exp>-?\d+)|(?P<sup>⁻¹))?$")


def tokenize_word(text: str) -> list[str]:
    """Split word text into letters, expanding ``x^n`` and ``x⁻¹``.

    Letters are whitespace separated.  ``1`` and ``ε`` denote the empty word.
    The returned letters still use the formal ``^-1`` suffix for vertex
    letters; edge inverses are resolved by :meth:`GroupSchema.parse_word`.
    """
    out: list[str] = []
    for tok in text.split():
        if tok in ("1", "ε", "e()"):
            continue
        m = _TOKEN.match(tok)
        if m is None:
            raise SchemaError(f"cannot parse letter {tok!r}")
        base = m.group("base")
        if m.group("sup"):
            exp = -1
        elif m.group("exp") is not None:
            exp = int(m.group("exp"))
        else:
            exp = 1
        letter = base if exp > 0 else formal_inverse(base)
        out.extend([letter] * abs(exp))
    return out


@dataclass(frozen=True)
class Edge:
    name: str
    reverse: str
    source: str  # the vertex the edge leaves
    target: str  # the vertex the edge enters; pieces after the letter live here
    in_tree: bool = False


@dataclass(frozen=True)
class Generator:
    name: str
    kind: str  # "vertex", "edge" or "dummy"
    home: str  # vertex of a vertex letter, edge name otherwise
    inverse: str


@dataclass
class GroupSchema:
    """A graph of groups with a chosen base vertex and spanning tree.

    ``oracles`` maps each vertex to a vertex-group oracle; ``frames`` maps each
    edge to its :class:`~gogword.edges.EdgeFrame` when the graph of groups is
    admissible.  ``oracle_specs`` keeps the config text each oracle was built
    from so the schema can be serialized again.
    """

    vertices: tuple
    edges: dict
    base_vertex: str
    vertex_gens: dict
    oracles: dict = field(default_factory=dict)
    frames: dict = field(default_factory=dict)
    oracle_specs: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.vertices = tuple(self.vertices)
        self.vertex_gens = {v: tuple(g) for v, g in self.vertex_gens.items()}
        self.letters = self._build_letters()
        self._tree_paths = None

    def _build_letters(self) -> dict:
        letters: dict = {}

        def add(gen):
            if gen.name not in letters:
                letters[gen.name] = gen

        for v, gens in self.vertex_gens.items():
            for g in gens:
                add(Generator(g, "vertex", v, formal_inverse(g)))
                add(Generator(formal_inverse(g), "vertex", v, g))
        for e in self.edges.values():
            add(Generator(e.name, "edge", e.name, e.reverse))
        add(Generator(DUMMY, "dummy", DUMMY, DUMMY_BAR))
        add(Generator(DUMMY_BAR, "dummy", DUMMY_BAR, DUMMY))
        return letters

    # -- generating sets ------------------------------------------------

    @property
    def is_admissible(self) -> bool:
        return bool(self.frames)

    def symmetric_gens(self, v: str) -> tuple:
        gens = self.vertex_gens.get(v, ())
        return gens + tuple(formal_inverse(g) for g in gens)

    def edge_gens(self, edge: str) -> tuple:
        """Letters of S_alpha: the c, o and coset letters of the edge frame."""
        frame = self.frames.get(edge)
        if frame is None:
            return ()
        letters = [frame.c_letter, frame.o_letter]
        letters += [h for h in frame.cosets[1:]]
        return tuple(letters + [formal_inverse(s) for s in letters])

    def vertex_of(self, letter: str) -> str:
        return self.letters[letter].home

    def is_edge_letter(self, letter: str) -> bool:
        return self.letters[letter].kind != "vertex"

    def inverse(self, letter: str) -> str:
        return self.letters[letter].inverse

    def bar(self, edge: str) -> str:
        if edge == DUMMY:
            return DUMMY_BAR
        if edge == DUMMY_BAR:
            return DUMMY
        return self.edges[edge].reverse

    def source(self, edge: str) -> str:
        if edge in (DUMMY, DUMMY_BAR):
            return self.base_vertex
        return self.edges[edge].source

    def target(self, edge: str) -> str:
        if edge in (DUMMY, DUMMY_BAR):
            return self.base_vertex
        return self.edges[edge].target

    # -- words ----------------------------------------------------------

    def parse_word(self, text: str) -> Word:
        out = []
        for letter in tokenize_word(text):
            if letter in self.letters:
                out.append(letter)
                continue
            base = formal_inverse(letter)
            if base in self.edges and letter.endswith(INV):
                out.append(self.edges[base].reverse)
                continue
            raise SchemaError(f"letter {letter!r} is not in the schema")
        return tuple(out)

    def invert(self, word: Sequence[str]) -> Word:
        return tuple(self.letters[s].inverse for s in reversed(word))

    def check_word(self, word: Sequence[str]) -> None:
        for s in word:
            if s not in self.letters:
                raise SchemaError(f"letter {s!r} is not in the schema")

    # -- spanning tree --------------------------------------------------

    def tree_path(self, u: str, v: str) -> tuple:
        """Edge letters of the spanning-tree geodesic from ``u`` to ``v``."""
        if self._tree_paths is None:
            self._tree_paths = self._all_tree_paths()
        return self._tree_paths[u][v]

    def _all_tree_paths(self) -> dict:
        adj: dict = {v: [] for v in self.vertices}
        for e in self.edges.values():
            if e.in_tree:
                adj[e.source].append(e)
        paths = {}
        for root in self.vertices:
            seen = {root: ()}
            queue = deque([root])
            while queue:
                x = queue.popleft()
                for e in adj[x]:
                    if e.target not in seen:
                        seen[e.target] = seen[x] + (e.name,)
                        queue.append(e.target)
            paths[root] = seen
        return paths

    # -- comparison -----------------------------------------------------

    def to_dict(self) -> dict:
        """Plain-data view used for semantic equality and serialization."""
        from .config import schema_to_dict

        return schema_to_dict(self)

    def __eq__(self, other):
        if not isinstance(other, GroupSchema):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    __hash__ = None


def validate_schema(schema: GroupSchema) -> list[str]:
    """List every violated machine-checkable structural invariant.

    An empty list means the schema is usable.  Malnormality and hyperbolicity
    of the vertex quotients are declared by the config author and not checked.
    """
    report: list[str] = []
    V = set(schema.vertices)
    if len(V) != len(schema.vertices):
        report.append("duplicate vertex names")
    if schema.base_vertex not in V:
        report.append(f"base vertex {schema.base_vertex!r} is not a vertex")
    if not schema.edges:
        report.append("graph has no edges")

    for name, e in schema.edges.items():
        if e.name != name:
            report.append(f"edge {name!r}: name field {e.name!r} disagrees")
        for end in (e.source, e.target):
            if end not in V:
                report.append(f"edge {name!r}: dangling endpoint {end!r}")
        rev = schema.edges.get(e.reverse)
        if rev is None:
            report.append(f"edge {name!r}: reverse edge {e.reverse!r} missing")
            continue
        if e.reverse == name:
            report.append(f"edge {name!r}: edge involution has a fixed point")
        if rev.reverse != name or rev.source != e.target or rev.target != e.source:
            report.append(f"edge involution/endpoint mismatch at {name!r}/{e.reverse!r}")
        if rev.in_tree != e.in_tree:
            report.append(f"edge {name!r}: tree membership differs from its reverse")

    seen: dict = {}
    for v, gens in schema.vertex_gens.items():
        if v not in V:
            report.append(f"generators declared for unknown vertex {v!r}")
        for g in gens:
            if g.endswith(INV) or g in (DUMMY, DUMMY_BAR) or not g or "^" in g:
                report.append(f"generator name {g!r} is reserved or malformed")
            for s in (g, formal_inverse(g)):
                if s in seen and seen[s] != v:
                    report.append(f"generator {s!r} belongs to both {seen[s]!r} and {v!r}")
                seen[s] = v
            if g in schema.edges:
                report.append(f"generator {g!r} clashes with an edge letter")
    for e in schema.edges:
        if e in (DUMMY, DUMMY_BAR):
            report.append("edge name '*' is reserved for the dummy edge")

    if V and schema.base_vertex in V and not report_has_dangling(report):
        adj: dict = {v: set() for v in V}
        for e in schema.edges.values():
            adj[e.source].add(e.target)
            adj[e.target].add(e.source)
        if _reach(adj, schema.base_vertex) != V:
            report.append("graph is not connected")
        tadj: dict = {v: set() for v in V}
        tree_edges = {frozenset((e.name, e.reverse)) for e in schema.edges.values() if e.in_tree}
        for e in schema.edges.values():
            if e.in_tree:
                tadj[e.source].add(e.target)
                tadj[e.target].add(e.source)
        if _reach(tadj, schema.base_vertex) != V or len(tree_edges) != len(V) - 1:
            report.append("tree edges do not form a spanning tree")

    if schema.oracles:
        for v in V:
            if v not in schema.oracles:
                report.append(f"vertex {v!r} has no oracle")

    if schema.frames:
        report.extend(_validate_frames(schema))
    return report


def report_has_dangling(report: list) -> bool:
    return any("dangling" in r or "missing" in r for r in report)


def _reach(adj: Mapping, root: str) -> set:
    seen = {root}
    stack = [root]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _validate_frames(schema: GroupSchema) -> list[str]:
    report = []
    center_at: dict = {}
    for name, e in schema.edges.items():
        frame = schema.frames.get(name)
        if frame is None:
            report.append(f"admissible edge {name!r} has no frame")
            continue
        sv = set(schema.symmetric_gens(e.target))
        if not frame.c_letter or not frame.o_letter:
            report.append(f"edge {name!r}: edge generating set must contain the c and o letters")
        for role, s in (("c", frame.c_letter), ("o", frame.o_letter)):
            if s and s not in sv:
                report.append(f"edge {name!r}: {role} letter {s!r} not in generators of {e.target!r}")
        for h in frame.cosets[1:]:
            if h not in sv:
                report.append(f"edge {name!r}: coset letter {h!r} not in generators of {e.target!r}")
        report.extend(f"edge {name!r}: {msg}" for msg in frame.check_tables())
        prev = center_at.setdefault(e.target, frame.c_letter)
        if prev != frame.c_letter:
            report.append(f"edges into {e.target!r} disagree on the central letter")
        rev = schema.frames.get(e.reverse)
        if rev is not None:
            for h, (_, _, h2) in frame.conj_table.items():
                if h2 not in rev.cosets:
                    report.append(f"edge {name!r}: conjugation lands outside cosets of {e.reverse!r}")
        oracle = schema.oracles.get(e.target)
        pres = getattr(oracle, "presentation", None)
        if oracle is not None and pres is None:
            report.append(f"vertex {e.target!r}: admissible vertex needs a central_extension oracle")
        elif pres is not None and pres.z_letter != frame.c_letter:
            report.append(f"edge {name!r}: c letter must be the central letter {pres.z_letter!r}")
    return report
