"""Shipped example schemas, seeded word generators and independent test oracles.

Schemas live as YAML files next to this module:

``zz``        Z * Z on two vertices
``f2f2``      F2 * F2
``zzz``       three free factors on a path plus a non-tree stable letter
``f2_index3`` F2 * Z with the F2 oracle going through an index-3 subgroup
``hnn_f2z``   the admissible loop over F2 x Z (t x t^-1 = z, t z t^-1 = y)
"""

from __future__ import annotations

import random
from importlib import resources
from typing import Sequence

from .config import load_schema
from .oracles import free_reduce
from .words import GroupSchema, Word, formal_inverse

FIXTURE_NAMES = ("zz", "f2f2", "zzz", "f2_index3", "hnn_f2z")


def fixture_path(name: str):
    return resources.files("gogword") / "fixtures" / f"{name}.yaml"


def load_fixture(name: str) -> GroupSchema:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    return load_schema(fixture_path(name))


# -- word generators -----------------------------------------------------------


def vertex_letters(schema: GroupSchema) -> list:
    return sorted(s for s, g in schema.letters.items() if g.kind == "vertex")


def all_letters(schema: GroupSchema) -> list:
    return sorted(schema.letters)


def random_word(rng: random.Random, letters: Sequence[str], length: int) -> Word:
    return tuple(rng.choice(letters) for _ in range(length))


def random_reduced_word(rng: random.Random, gens: Sequence[str], length: int) -> Word:
    """Uniform-ish freely reduced word: never follow a letter by its inverse."""
    letters = list(gens) + [formal_inverse(g) for g in gens]
    out: list = []
    while len(out) < length:
        s = rng.choice(letters)
        if out and out[-1] == formal_inverse(s):
            continue
        out.append(s)
    return tuple(out)


def random_trivial_word(rng: random.Random, schema: GroupSchema, length: int,
                        relators: Sequence[Sequence[str]] = (), letters: Sequence[str] | None = None) -> Word:
    """A word equal to the identity, built by inserting cancelling pairs and relators.

    Insertions happen at random positions, so the result mixes factors
    thoroughly.  The length is at most ``length``.
    """
    if letters is None:
        letters = vertex_letters(schema)
    word: list = []
    while True:
        if relators and rng.random() < 0.3:
            r = list(rng.choice(relators))
            if rng.random() < 0.5:
                r = list(schema.invert(r))
        else:
            s = rng.choice(letters)
            r = [s, schema.inverse(s)]
        if len(word) + len(r) > length:
            return tuple(word)
        p = rng.randint(0, len(word))
        word[p:p] = r


def perturb(rng: random.Random, word: Sequence[str], letters: Sequence[str]) -> Word:
    """Replace one letter, which usually makes a trivial word nontrivial."""
    if not word:
        return (rng.choice(letters),)
    w = list(word)
    w[rng.randrange(len(w))] = rng.choice(letters)
    return tuple(w)


def word_corpus(rng: random.Random, schema: GroupSchema, count: int, max_length: int,
                letters: Sequence[str] | None = None, relators: Sequence[Sequence[str]] = ()) -> list:
    """Mixed corpus: a third uniform random, a third trivial, a third perturbed trivial."""
    if letters is None:
        letters = vertex_letters(schema)
    out = []
    for j in range(count):
        n = rng.randint(0, max_length)
        kind = j % 3
        if kind == 0:
            out.append(random_word(rng, letters, n))
        else:
            w = random_trivial_word(rng, schema, n, relators, letters)
            out.append(w if kind == 1 else perturb(rng, w, letters))
    return out


# -- the admissible loop fixture, decided independently --------------------------

HNN_RELATORS = (
    ("t", "x", "T", "z^-1"),
    ("t", "z", "T", "y^-1"),
    ("x", "z", "x^-1", "z^-1"),
    ("y", "z", "y^-1", "z^-1"),
)


def f2z_split(word: Sequence[str]) -> tuple:
    """(free reduction of the F2 part, exponent sum of z) for a word in F2 x Z."""
    zsum = 0
    rest = []
    for s in word:
        if s == "z":
            zsum += 1
        elif s == "z^-1":
            zsum -= 1
        else:
            rest.append(s)
    return free_reduce(rest), zsum


def _power_of(reduced: Sequence[str], letter: str) -> int | None:
    if all(s == letter for s in reduced):
        return len(reduced)
    inv = formal_inverse(letter)
    if all(s == inv for s in reduced):
        return -len(reduced)
    return None


def hnn_member(edge: str, word: Sequence[str]) -> bool:
    """Membership in <x> x <z> (edge t) or <y> x <z> (edge T) by free reduction."""
    reduced, _ = f2z_split(word)
    return _power_of(reduced, "x" if edge == "t" else "y") is not None


def _power(letter: str, e: int) -> list:
    return [letter if e > 0 else formal_inverse(letter)] * abs(e)


def hnn_conjugate(edge: str, word: Sequence[str]) -> Word:
    """A word for ``t w t^-1`` (edge t) or ``T w T^-1`` (edge T).

    t x^l z^k t^-1 = z^l y^k and T y^l z^k T^-1 = z^l x^k.
    """
    reduced, k = f2z_split(word)
    if edge == "t":
        return tuple(_power("z", _power_of(reduced, "x")) + _power("y", k))
    return tuple(_power("z", _power_of(reduced, "y")) + _power("x", k))


def hnn_letters() -> list:
    return ["x", "x^-1", "y", "y^-1", "z", "z^-1", "t", "T"]

