"""Edge groups of admissible graphs of groups.

Each edge group is a finite extension of Z^2 = <c> x <o> where c is central in
the target vertex group and o is the central letter of the opposite side
transported across the edge.  Elements are stored as edge normal forms
``c^k o^l h`` with ``h`` drawn from a finite list of coset letters, ``"1"``
first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .hyperbolic import CentralExtension, QuasiconvexAutomaton, central_extension_resolve, dehn_reduce
from .words import SchemaError, Word, formal_inverse

ONE = "1"


class EdgeNormalForm(NamedTuple):
    k: int
    l: int
    h: str = ONE

    def __str__(self):
        return f"({self.k},{self.l},{self.h})"


UNIT = EdgeNormalForm(0, 0, ONE)


@dataclass
class EdgeFrame:
    """The (c, o, H) data of one edge plus its multiplication and conjugation tables.

    ``coset_mul[(h, h2)]`` is the normal form of ``h h2``; rows involving the
    identity coset are implied.  ``conj_table[h]`` is the normal form, on the
    reverse edge, of ``t h t^-1``.
    """

    edge: str
    c_letter: str
    o_letter: str
    cosets: tuple = (ONE,)
    coset_mul: dict = field(default_factory=dict)
    conj_table: dict = field(default_factory=lambda: {ONE: UNIT})
    K: int = 1
    automaton: QuasiconvexAutomaton | None = None
    automaton_spec: str = ""

    def __post_init__(self):
        self.cosets = tuple(self.cosets)
        self.coset_mul = {key: EdgeNormalForm(*v) for key, v in self.coset_mul.items()}
        self.conj_table = {h: EdgeNormalForm(*v) for h, v in self.conj_table.items()}
        self.conj_table.setdefault(ONE, UNIT)
        self._letters = None

    def mul_coset(self, h: str, h2: str) -> EdgeNormalForm:
        if h == ONE:
            return EdgeNormalForm(0, 0, h2)
        if h2 == ONE:
            return EdgeNormalForm(0, 0, h)
        try:
            return self.coset_mul[(h, h2)]
        except KeyError:
            raise SchemaError(f"edge {self.edge!r}: no coset product for {h!r}*{h2!r}") from None

    def check_tables(self) -> list[str]:
        problems = []
        if not self.cosets or self.cosets[0] != ONE:
            problems.append("coset list must start with the identity '1'")
        hs = set(self.cosets)
        for h in self.cosets[1:]:
            for h2 in self.cosets[1:]:
                g = self.coset_mul.get((h, h2))
                if g is None:
                    problems.append(f"coset product {h}*{h2} missing")
                elif g.h not in hs:
                    problems.append(f"coset product {h}*{h2} lands outside the coset list")
        for h in self.cosets:
            if h not in self.conj_table:
                problems.append(f"conjugation entry for coset {h!r} missing")
        if self.K < 1:
            problems.append("K must be a positive integer")
        if not problems and len(self.cosets) > 1:
            for a in self.cosets:
                for b in self.cosets:
                    for c in self.cosets:
                        x = enf_multiply(self, enf_multiply(self, (0, 0, a), (0, 0, b)), (0, 0, c))
                        y = enf_multiply(self, (0, 0, a), enf_multiply(self, (0, 0, b), (0, 0, c)))
                        if x != y:
                            problems.append(f"coset products are not associative at {a},{b},{c}")
        return problems

    def letter_forms(self) -> dict:
        """Normal forms of the letters o, c, coset letters and their inverses."""
        if self._letters is None:
            forms = {
                self.o_letter: EdgeNormalForm(0, 1, ONE),
                formal_inverse(self.o_letter): EdgeNormalForm(0, -1, ONE),
                self.c_letter: EdgeNormalForm(1, 0, ONE),
                formal_inverse(self.c_letter): EdgeNormalForm(-1, 0, ONE),
            }
            for h in self.cosets[1:]:
                forms[h] = EdgeNormalForm(0, 0, h)
                forms[formal_inverse(h)] = self._coset_inverse(h)
            self._letters = forms
        return self._letters

    def _coset_inverse(self, h: str) -> EdgeNormalForm:
        for h2 in self.cosets:
            k, l, h3 = self.mul_coset(h, h2)
            if h3 == ONE:
                return EdgeNormalForm(-k, -l, h2)
        raise SchemaError(f"edge {self.edge!r}: coset {h!r} has no inverse in the table")


def _check_coset(frame: EdgeFrame, h: str) -> None:
    if h not in frame.cosets:
        raise SchemaError(f"edge {frame.edge!r}: unknown coset {h!r}")


def enf_multiply(frame: EdgeFrame, g: Sequence, g2: Sequence) -> EdgeNormalForm:
    k, l, h = g
    k2, l2, h2 = g2
    _check_coset(frame, h)
    _check_coset(frame, h2)
    k3, l3, h3 = frame.mul_coset(h, h2)
    return EdgeNormalForm(k + k2 + k3, l + l2 + l3, h3)


def enf_conjugate_across(frame: EdgeFrame, g: Sequence) -> EdgeNormalForm:
    """Move ``g`` from the frame's edge to the reverse edge; c and o swap roles."""
    k, l, h = g
    _check_coset(frame, h)
    k2, l2, h2 = frame.conj_table[h]
    return EdgeNormalForm(l + k2, k + l2, h2)


def enf_to_word(frame: EdgeFrame, g: Sequence) -> Word:
    k, l, h = g
    c = frame.c_letter if k >= 0 else formal_inverse(frame.c_letter)
    o = frame.o_letter if l >= 0 else formal_inverse(frame.o_letter)
    out = (c,) * abs(k) + (o,) * abs(l)
    if h != ONE:
        out += (h,)
    return out


def edge_membership(frame: EdgeFrame, pres: CentralExtension, word: Sequence[str]) -> EdgeNormalForm | None:
    """Normal form of ``word`` if it lies in the edge group, else ``None``.

    The projection drops the central letter; quasiconvex membership of the
    projection yields a representative over o and the coset letters, which is
    folded into ``o^l h``.  The c-exponent then comes from resolving the
    quotient of ``word`` by that representative as a central element.
    """
    if frame.automaton is None:
        raise SchemaError(f"edge {frame.edge!r} has no membership automaton")
    z, zi = pres.z_letter, formal_inverse(pres.z_letter)
    projection = [s for s in word if s != z and s != zi]
    rep = frame.automaton.run(dehn_reduce(pres.base, projection))
    if rep is None:
        return None
    forms = frame.letter_forms()
    g = UNIT
    for s in rep:
        try:
            g = enf_multiply(frame, g, forms[s])
        except KeyError:
            raise SchemaError(f"edge {frame.edge!r}: automaton emitted unknown letter {s!r}") from None
    n = central_extension_resolve(pres, tuple(word) + tuple(_inverse_word(enf_to_word(frame, g))))
    if n is None:
        raise SchemaError(f"edge {frame.edge!r}: representative does not match the projection")
    return EdgeNormalForm(g.k + n, g.l, g.h)


def _inverse_word(word):
    return [formal_inverse(s) for s in reversed(word)]
