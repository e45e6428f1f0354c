"""Dehn's algorithm, central extensions and quasiconvex membership.

A :class:`DehnSystem` is a finite list of shortening rules ``lhs -> rhs`` with
``|rhs| < |lhs|`` and ``rhs`` equal to ``lhs`` in the group.  Reduction keeps a
confirmed prefix and an unscanned suffix: each step moves one letter into the
prefix and, if some suffix of the prefix is a rule left-hand side, replaces it
and pushes the right-hand side back onto the unscanned part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from .oracles import VertexOracle, _symmetric
from .words import SchemaError, Word, format_word, formal_inverse, invert_word, tokenize_word


@dataclass
class DehnSystem:
    alphabet: frozenset
    delta: int
    rules: dict  # lhs tuple -> rhs tuple

    def __post_init__(self):
        self.alphabet = frozenset(self.alphabet)
        for lhs, rhs in self.rules.items():
            if len(rhs) >= len(lhs):
                raise SchemaError(f"rule {format_word(lhs)} -> {format_word(rhs)} does not shorten")
            for s in lhs + rhs:
                if s not in self.alphabet:
                    raise SchemaError(f"rule letter {s!r} outside alphabet")
        self.lengths = sorted({len(lhs) for lhs in self.rules})

    @property
    def window(self) -> int:
        """Longest window the reducer inspects: 9*delta, or the longest rule."""
        return max([9 * self.delta, *self.lengths, 1])

    def shorten(self, b: Sequence[str]) -> Word | None:
        """Apply the first matching rule inside ``b``; ``None`` if ``b`` is a local geodesic."""
        b = tuple(b)
        for L in self.lengths:
            for i in range(len(b) - L + 1):
                rhs = self.rules.get(b[i:i + L])
                if rhs is not None:
                    return b[:i] + rhs + b[i + L:]
        return None

    def geodesic_test(self, b: Sequence[str]) -> bool:
        return self.shorten(b) is None


def free_dehn_system(gens: Sequence[str]) -> DehnSystem:
    alphabet = _symmetric(gens)
    rules = {(s, formal_inverse(s)): () for s in alphabet}
    return DehnSystem(alphabet, 0, rules)


def one_relator_dehn_system(gens: Sequence[str], relator: Sequence[str], delta: int = 1) -> DehnSystem:
    """Dehn rules for a one-relator small-cancellation group.

    Every cyclic subword ``v`` of the relator or its inverse with ``|v|`` more
    than half the relator gives ``v -> v'^-1`` where ``v v'`` is the cyclic
    conjugate starting at ``v``.  Free cancellation rules are included.
    """
    sys = free_dehn_system(gens)
    rules = dict(sys.rules)
    relator = tuple(relator)
    n = len(relator)
    for r in (relator, invert_word(relator)):
        for i in range(n):
            rot = r[i:] + r[:i]
            for L in range(n // 2 + 1, n + 1):
                lhs, rest = rot[:L], rot[L:]
                rules.setdefault(lhs, invert_word(rest))
    return DehnSystem(sys.alphabet, delta, rules)


def _dehn_scan(sys: DehnSystem, word: Sequence[str], on_rewrite=None) -> tuple:
    alphabet, rules, lengths = sys.alphabet, sys.rules, sys.lengths
    a: list = []
    rest = list(reversed(word))
    inspections = 0
    while rest:
        s = rest.pop()
        if s not in alphabet:
            raise SchemaError(f"letter {s!r} outside Dehn alphabet")
        a.append(s)
        inspections += 1
        for L in lengths:
            if L > len(a):
                break
            lhs = tuple(a[-L:])
            rhs = rules.get(lhs)
            if rhs is not None:
                del a[-L:]
                rest.extend(reversed(rhs))
                if on_rewrite is not None:
                    on_rewrite(lhs, rhs)
                break
    return tuple(a), inspections


def dehn_reduce(sys: DehnSystem, word: Sequence[str], on_rewrite: Callable | None = None) -> Word:
    """Reduce ``word`` to a local geodesic equal to it in the group.

    ``on_rewrite(lhs, rhs)`` is called for every rule application.  The number
    of letters moved into the prefix is at most ``window * len(word)``.
    """
    return _dehn_scan(sys, word, on_rewrite)[0]


def dehn_reduce_counted(sys: DehnSystem, word: Sequence[str]) -> tuple:
    """Like :func:`dehn_reduce` but also returns the number of window inspections."""
    return _dehn_scan(sys, word)


class DehnOracle(VertexOracle):
    """Triviality by Dehn reduction; exact when the rules form a Dehn presentation."""

    def __init__(self, sys: DehnSystem):
        self.sys = sys
        self.alphabet = sys.alphabet
        self.gens = tuple(sorted(s for s in sys.alphabet if not s.endswith("^-1")))

    def is_trivial(self, word):
        return not dehn_reduce(self.sys, word)

    def reduce(self, word):
        return dehn_reduce(self.sys, word)


# -- rules and automaton files ---------------------------------------------


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_rules(text: str) -> DehnSystem:
    """Parse a rules file.

    Lines are ``lhs -> rhs`` with space-separated letters (``1`` is the empty
    word), plus ``gens: x y ...`` and optional ``delta: n`` headers.  Free
    cancellation rules for the declared generators are always added.
    """
    gens, delta, rules = None, 0, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("gens:"):
            gens = line[5:].split()
            continue
        if line.startswith("delta:"):
            delta = int(line[6:])
            continue
        if "->" not in line:
            raise SchemaError(f"rules line {lineno}: expected 'lhs -> rhs'")
        lhs, rhs = line.split("->", 1)
        rules[tuple(tokenize_word(lhs))] = tuple(tokenize_word(rhs))
    if gens is None:
        raise SchemaError("rules file needs a 'gens:' line")
    base = free_dehn_system(gens)
    base.rules.update(rules)
    return DehnSystem(base.alphabet, delta, base.rules)


def format_rules(sys: DehnSystem) -> str:
    gens = sorted(s for s in sys.alphabet if not s.endswith("^-1"))
    lines = [f"gens: {' '.join(gens)}", f"delta: {sys.delta}"]
    for lhs, rhs in sorted(sys.rules.items(), key=lambda kv: (len(kv[0]), kv[0])):
        lines.append(f"{format_word(lhs)} -> {format_word(rhs)}")
    return "\n".join(lines) + "\n"


def load_rules(path) -> DehnSystem:
    return parse_rules(Path(path).read_text())


# -- central extensions ----------------------------------------------------


@dataclass
class CentralExtension:
    """H x_sigma Z presented by the letters of ``base`` plus the central letter.

    ``sigma(h, h2)`` evaluates the cocycle on two words over the base alphabet;
    ``None`` means the trivial cocycle (a direct product).
    """

    base: DehnSystem
    z_letter: str
    sigma: Callable | None = None

    @property
    def alphabet(self) -> frozenset:
        return self.base.alphabet | {self.z_letter, formal_inverse(self.z_letter)}

    def word_cocycle(self, b: Sequence[str]) -> int:
        """The Z-coordinate n_b of the product of the letters of ``b``."""
        if self.sigma is None:
            return 0
        b = tuple(b)
        return sum(self.sigma(b[:j], b[j:j + 1]) for j in range(1, len(b)))


def central_extension_resolve(pres: CentralExtension, word: Sequence[str]) -> int | None:
    """Return n if ``word`` equals z^n, else ``None``.

    z letters are stripped first; the base word is Dehn-reduced while every
    rewrite ``b -> b'`` adds ``n_b - n_b'`` to the running total.
    """
    z, zi = pres.z_letter, formal_inverse(pres.z_letter)
    n = 0
    base = []
    for s in word:
        if s == z:
            n += 1
        elif s == zi:
            n -= 1
        else:
            base.append(s)
    if pres.sigma is None:
        return n if not dehn_reduce(pres.base, base) else None
    total = [n]

    # Replacing b by b' inside the word multiplies the element by
    # z^(n_b' - n_b), so the running total absorbs the difference.
    def correct(lhs, rhs):
        total[0] += pres.word_cocycle(lhs) - pres.word_cocycle(rhs)

    rest = dehn_reduce(pres.base, base, correct)
    if rest:
        return None
    return total[0]


class CentralExtensionOracle(VertexOracle):
    """Vertex oracle for a Z-central extension of a Dehn-presented group."""

    def __init__(self, presentation: CentralExtension):
        self.presentation = presentation
        self.alphabet = presentation.alphabet
        base_gens = sorted(s for s in presentation.base.alphabet if not s.endswith("^-1"))
        self.gens = tuple(base_gens) + (presentation.z_letter,)

    def is_trivial(self, word):
        self._check(word)
        return central_extension_resolve(self.presentation, word) == 0

    def __repr__(self):
        return f"CentralExtensionOracle(z={self.presentation.z_letter!r})"


# -- quasiconvex membership ------------------------------------------------


@dataclass
class QuasiconvexAutomaton:
    """Transducer reading local geodesics and writing words over subgroup letters.

    ``transitions[(state, letter)] = (state', output)``.  The initial state is
    also the only accepting state.
    """

    states: tuple
    initial: str
    transitions: dict
    lam: int = 1
    outputs: frozenset = field(default_factory=frozenset)

    def run(self, word: Sequence[str]) -> Word | None:
        state = self.initial
        out: list = []
        for s in word:
            step = self.transitions.get((state, s))
            if step is None:
                return None
            state, emitted = step
            out.extend(emitted)
        return tuple(out) if state == self.initial else None


def quasiconvex_membership(aut: QuasiconvexAutomaton, sys: DehnSystem, word: Sequence[str]) -> Word | None:
    """Representative over the subgroup letters if ``word`` lies in the subgroup, else ``None``."""
    return aut.run(dehn_reduce(sys, word))


def cyclic_automaton(letter: str) -> QuasiconvexAutomaton:
    """Automaton for the cyclic subgroup generated by ``letter`` in a free group.

    Reduced words in the subgroup are exactly the powers, so one state
    suffices: it loops on the letter and its inverse and has no other moves.
    """
    inv = formal_inverse(letter)
    transitions = {("1", letter): ("1", (letter,)), ("1", inv): ("1", (inv,))}
    return QuasiconvexAutomaton(("1",), "1", transitions, 1, frozenset({letter, inv}))


def build_cyclic_automaton(free_rank: int, generator_index: int, names: Sequence[str] | None = None) -> QuasiconvexAutomaton:
    """Automaton for the i-th generator's cyclic subgroup of F_r (1-based i)."""
    if not 1 <= generator_index <= free_rank:
        raise SchemaError(f"generator index {generator_index} out of range 1..{free_rank}")
    if names is None:
        names = [f"x{j}" for j in range(1, free_rank + 1)]
    return cyclic_automaton(names[generator_index - 1])


def parse_automaton(text: str) -> QuasiconvexAutomaton:
    """Parse ``states:``/``initial:``/``lambda:`` headers and ``p s -> q : out`` lines."""
    states, initial, lam, transitions = None, None, 1, {}
    outputs: set = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("states:"):
            states = tuple(line[7:].split())
        elif line.startswith("initial:"):
            initial = line[8:].strip()
        elif line.startswith("lambda:"):
            lam = int(line[7:])
        else:
            try:
                left, right = line.split("->", 1)
                p, s = left.split()
                q, _, out = right.partition(":")
                q = q.strip()
                emitted = tuple(tokenize_word(out))
            except ValueError:
                raise SchemaError(f"automaton line {lineno}: expected 'state letter -> state : output'") from None
            transitions[(p, s)] = (q, emitted)
            outputs.update(emitted)
    if states is None or initial is None:
        raise SchemaError("automaton file needs 'states:' and 'initial:' lines")
    for (p, _), (q, _) in transitions.items():
        if p not in states or q not in states:
            raise SchemaError(f"automaton transition uses undeclared state {p!r} or {q!r}")
    return QuasiconvexAutomaton(states, initial, transitions, lam, frozenset(outputs))


def load_automaton(path) -> QuasiconvexAutomaton:
    return parse_automaton(Path(path).read_text())
