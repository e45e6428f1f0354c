"""Triviality oracles for vertex groups and the finite-index transfer.

Every oracle charges the length of its input to a :class:`ChargeMeter`; the
benchmark harness reports these charges instead of wall time.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .words import SchemaError, Word, formal_inverse


class ChargeMeter:
    """Accumulates oracle charges for one solver run."""

    def __init__(self):
        self.total = 0
        self.calls = 0

    def charge(self, amount: int) -> None:
        self.total += amount
        self.calls += 1

    def __repr__(self):
        return f"ChargeMeter(total={self.total}, calls={self.calls})"


class VertexOracle:
    """Decides triviality of words over a fixed symmetric alphabet.

    Subclasses implement :meth:`is_trivial` and may implement :meth:`reduce`
    returning a canonical representative.  ``charge_model`` is ``"linear"``
    when one call costs O(|w|).
    """

    charge_model = "linear"
    alphabet: frozenset = frozenset()

    def is_trivial(self, word: Sequence[str]) -> bool:
        raise NotImplementedError

    def reduce(self, word: Sequence[str]) -> Word:
        raise NotImplementedError

    def test(self, word: Sequence[str], meter: ChargeMeter | None = None) -> bool:
        if meter is not None:
            meter.charge(len(word))
        return self.is_trivial(word)

    def _check(self, word):
        for s in word:
            if s not in self.alphabet:
                raise SchemaError(f"letter {s!r} outside oracle alphabet")


def _symmetric(gens: Sequence[str]) -> frozenset:
    return frozenset(gens) | frozenset(formal_inverse(g) for g in gens)


def free_reduce(word: Sequence[str]) -> Word:
    stack: list = []
    for s in word:
        if stack and stack[-1] == formal_inverse(s):
            stack.pop()
        else:
            stack.append(s)
    return tuple(stack)


def free_is_trivial(word: Sequence[str], gens: Sequence[str] | None = None) -> bool:
    """True iff ``word`` freely reduces to the empty word.

    With ``gens`` given, letters outside the symmetric closure are rejected.
    """
    if gens is not None:
        alphabet = _symmetric(gens)
        for s in word:
            if s not in alphabet:
                raise SchemaError(f"letter {s!r} outside free-group alphabet")
    return not free_reduce(word)


def abelian_is_trivial(word: Sequence[str], gens: Sequence[str] | None = None) -> bool:
    """True iff every generator's exponent sum is zero."""
    sums: dict = {}
    alphabet = _symmetric(gens) if gens is not None else None
    for s in word:
        if alphabet is not None and s not in alphabet:
            raise SchemaError(f"letter {s!r} outside abelian alphabet")
        if s.endswith("^-1"):
            key = s[:-3]
            sums[key] = sums.get(key, 0) - 1
        else:
            sums[s] = sums.get(s, 0) + 1
    return not any(sums.values())


class FreeOracle(VertexOracle):
    def __init__(self, gens: Sequence[str]):
        self.gens = tuple(gens)
        self.alphabet = _symmetric(self.gens)
        self._inv = {s: formal_inverse(s) for s in self.alphabet}

    def reduce(self, word):
        inv = self._inv
        stack: list = []
        for s in word:
            t = inv.get(s)
            if t is None:
                raise SchemaError(f"letter {s!r} outside free-group alphabet")
            if stack and stack[-1] == t:
                stack.pop()
            else:
                stack.append(s)
        return tuple(stack)

    def is_trivial(self, word):
        if len(self.gens) == 1:
            g = self.gens[0]
            total = 0
            for s in word:
                if s == g:
                    total += 1
                elif s in self.alphabet:
                    total -= 1
                else:
                    raise SchemaError(f"letter {s!r} outside free-group alphabet")
            return total == 0
        return not self.reduce(word)

    def __repr__(self):
        return f"FreeOracle({list(self.gens)})"


class AbelianOracle(VertexOracle):
    def __init__(self, gens: Sequence[str]):
        self.gens = tuple(gens)
        self.alphabet = _symmetric(self.gens)

    def exponents(self, word) -> dict:
        self._check(word)
        sums = dict.fromkeys(self.gens, 0)
        for s in word:
            if s in sums:
                sums[s] += 1
            else:
                sums[formal_inverse(s)] -= 1
        return sums

    def is_trivial(self, word):
        return not any(self.exponents(word).values())

    def reduce(self, word):
        out = []
        for g, e in self.exponents(word).items():
            out += [g if e > 0 else formal_inverse(g)] * abs(e)
        return tuple(out)

    def __repr__(self):
        return f"AbelianOracle({list(self.gens)})"


class ProductOracle(VertexOracle):
    """Direct product of two oracles over disjoint alphabets."""

    def __init__(self, a: VertexOracle, b: VertexOracle):
        if a.alphabet & b.alphabet:
            raise SchemaError("product factors must have disjoint alphabets")
        self.a, self.b = a, b
        self.alphabet = a.alphabet | b.alphabet
        self.gens = tuple(getattr(a, "gens", ())) + tuple(getattr(b, "gens", ()))

    def split(self, word):
        self._check(word)
        left = tuple(s for s in word if s in self.a.alphabet)
        right = tuple(s for s in word if s not in self.a.alphabet)
        return left, right

    def is_trivial(self, word):
        left, right = self.split(word)
        return self.a.is_trivial(left) and self.b.is_trivial(right)

    def reduce(self, word):
        left, right = self.split(word)
        return self.a.reduce(left) + self.b.reduce(right)

    def __repr__(self):
        return f"ProductOracle({self.a!r}, {self.b!r})"


def product_oracle(a: VertexOracle, b: VertexOracle) -> VertexOracle:
    return ProductOracle(a, b)


# -- finite index ---------------------------------------------------------


@dataclass
class CosetTable:
    """Right cosets of a finite-index subgroup H of a group generated by ``gens``.

    ``transition[(i, s)]`` is the coset of ``H c_i s``; ``rewrite[(i, s)]`` is
    the letter over the subgroup alphabet T naming ``c_i s c_j^-1`` where j is
    the target coset.  ``identity_letter`` names the identity element of T; it
    is emitted for Schreier-tree transitions so the rewritten word keeps one
    letter per input letter.
    """

    gens: tuple
    representatives: tuple
    transition: dict
    rewrite: dict
    subgroup_gens: tuple = ()
    identity_letter: str = "e"
    expansions: dict = field(default_factory=dict)

    @property
    def alphabet(self) -> frozenset:
        return _symmetric(self.gens)

    def check(self) -> list[str]:
        problems = []
        for i in range(len(self.representatives)):
            for s in sorted(self.alphabet):
                if (i, s) not in self.transition:
                    problems.append(f"transition undefined at coset {i}, letter {s!r}")
                if (i, s) not in self.rewrite:
                    problems.append(f"rewrite undefined at coset {i}, letter {s!r}")
        return problems

    @classmethod
    def from_permutations(cls, gens: Sequence[str], perms: Mapping[str, Sequence[int]],
                          identity_letter: str = "e") -> "CosetTable":
        """Build the table from the action of each generator on cosets 0..n-1.

        Coset 0 is the subgroup.  Representatives come from a breadth-first
        Schreier tree; the non-tree transitions give a free basis of H when
        the ambient group is free.
        """
        gens = tuple(gens)
        n = len(next(iter(perms.values())))
        for g in gens:
            if sorted(perms[g]) != list(range(n)):
                raise SchemaError(f"action of {g!r} is not a permutation")
        reps: dict = {0: ()}
        tree: set = set()
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for g in gens:
                for s, j in ((g, perms[g][i]), (formal_inverse(g), perms[g].index(i))):
                    if j not in reps:
                        reps[j] = reps[i] + (s,)
                        tree.add((i, s))
                        tree.add((j, formal_inverse(s)))
                        queue.append(j)
        if len(reps) != n:
            raise SchemaError("coset graph is not connected")
        transition, rewrite, expansions = {}, {}, {}
        subgroup_gens = []
        for i in range(n):
            for g in gens:
                j = perms[g][i]
                transition[(i, g)] = j
                transition[(j, formal_inverse(g))] = i
                if (i, g) in tree:
                    rewrite[(i, g)] = identity_letter
                    rewrite[(j, formal_inverse(g))] = identity_letter
                else:
                    name = f"{g}_{i}"
                    subgroup_gens.append(name)
                    rewrite[(i, g)] = name
                    rewrite[(j, formal_inverse(g))] = formal_inverse(name)
                    expansions[name] = reps[i] + (g,) + tuple(formal_inverse(s) for s in reversed(reps[j]))
        return cls(gens, tuple(reps[i] for i in range(n)), transition, rewrite,
                   tuple(subgroup_gens), identity_letter, expansions)


def finite_index_rewrite(table: CosetTable, word: Sequence[str]) -> Word | None:
    """Rewrite ``word`` over the subgroup alphabet, or ``None`` if not in H.

    One left-to-right pass tracking the current coset.  The result has exactly
    ``len(word)`` letters, identity letters included.
    """
    coset = 0
    out = []
    for s in word:
        key = (coset, s)
        try:
            out.append(table.rewrite[key])
            coset = table.transition[key]
        except KeyError:
            raise SchemaError(f"coset table undefined at coset {coset}, letter {s!r}") from None
    if coset != 0:
        return None
    return tuple(out)


class FiniteIndexOracle(VertexOracle):
    """Triviality in G from triviality in a finite-index subgroup H."""

    def __init__(self, table: CosetTable, inner: VertexOracle):
        self.table = table
        self.inner = inner
        self.alphabet = table.alphabet
        self.gens = table.gens
        self.charge_model = inner.charge_model

    def is_trivial(self, word):
        self._check(word)
        rewritten = finite_index_rewrite(self.table, word)
        if rewritten is None:
            return False
        e = self.table.identity_letter
        return self.inner.is_trivial([t for t in rewritten if t != e])

    def __repr__(self):
        return f"FiniteIndexOracle(index={len(self.table.representatives)}, {self.inner!r})"
