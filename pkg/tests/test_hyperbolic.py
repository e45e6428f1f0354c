import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gogword.fixtures import random_reduced_word, random_word
from gogword.hyperbolic import (
    CentralExtension, CentralExtensionOracle, DehnSystem, build_cyclic_automaton, central_extension_resolve,
    cyclic_automaton, dehn_reduce, dehn_reduce_counted, format_rules, free_dehn_system, one_relator_dehn_system,
    parse_automaton, parse_rules, quasiconvex_membership,
)
from gogword.oracles import free_is_trivial, free_reduce
from gogword.words import SchemaError, invert_word

F2 = ["x", "x^-1", "y", "y^-1"]
F2Z = F2 + ["z", "z^-1"]
SURFACE = ("a", "b", "a^-1", "b^-1", "c", "d", "c^-1", "d^-1")

free2 = free_dehn_system(["x", "y"])
f2z = CentralExtension(free2, "z")


def _cyclic_conjugates(r):
    out = set()
    for word in (tuple(r), invert_word(r)):
        for i in range(len(word)):
            out.add(word[i:] + word[:i])
    return out


def test_free_dehn_examples():
    assert dehn_reduce(free2, ["x", "x^-1", "y"]) == ("y",)
    w = ("x", "y", "x^-1", "y^-1", "y^-1")
    assert dehn_reduce(free2, w) == w


@given(st.lists(st.sampled_from(F2), max_size=80))
def test_free_dehn_equals_free_reduction(w):
    assert dehn_reduce(free2, w) == free_reduce(w)


@given(st.lists(st.sampled_from(F2), max_size=80))
def test_dehn_reduce_is_idempotent(w):
    once = dehn_reduce(free2, w)
    assert dehn_reduce(free2, once) == once


def test_dehn_rejects_foreign_letters():
    with pytest.raises(SchemaError):
        dehn_reduce(free2, ["q"])


def test_non_shortening_rule_rejected():
    with pytest.raises(SchemaError):
        DehnSystem({"x", "x^-1"}, 0, {("x",): ("x",)})


def test_shorten_and_geodesic_test_agree():
    sys = one_relator_dehn_system("abcd", SURFACE)
    rng = random.Random(2)
    for _ in range(300):
        b = random_word(rng, sorted(sys.alphabet), rng.randint(0, sys.window))
        short = sys.shorten(b)
        assert (short is None) == sys.geodesic_test(b)
        if short is not None:
            assert len(short) < len(b)


def test_surface_rules_are_relator_consequences():
    sys = one_relator_dehn_system("abcd", SURFACE)
    conjugates = _cyclic_conjugates(SURFACE)
    for lhs, rhs in sys.rules.items():
        if len(lhs) == 2 and not rhs:
            assert free_is_trivial(lhs)
            continue
        assert len(lhs) > len(SURFACE) // 2
        assert lhs + invert_word(rhs) in conjugates


def test_surface_relator_reduces_to_empty():
    sys = one_relator_dehn_system("abcd", SURFACE)
    assert dehn_reduce(sys, SURFACE) == ()
    assert dehn_reduce(sys, invert_word(SURFACE)) == ()


def test_surface_products_of_conjugates_reduce_to_empty():
    sys = one_relator_dehn_system("abcd", SURFACE)
    letters = sorted(sys.alphabet)
    rng = random.Random(4)
    for _ in range(200):
        word = []
        for _ in range(rng.randint(1, 4)):
            g = random_word(rng, letters, rng.randint(0, 5))
            r = SURFACE if rng.random() < 0.5 else invert_word(SURFACE)
            word += list(g) + list(r) + list(invert_word(g))
        assert dehn_reduce(sys, word) == ()


def test_surface_generators_survive():
    sys = one_relator_dehn_system("abcd", SURFACE)
    for w in (("a",), ("a", "b"), ("a", "b", "a^-1", "b^-1")):
        assert dehn_reduce(sys, w) == w


def test_inspection_bound():
    rng = random.Random(8)
    sys = one_relator_dehn_system("abcd", SURFACE)
    for _ in range(200):
        w = random_word(rng, sorted(sys.alphabet), rng.randint(0, 120))
        _, inspections = dehn_reduce_counted(sys, w)
        assert inspections <= sys.window * len(w)
    for _ in range(200):
        w = random_word(rng, F2, rng.randint(0, 120))
        _, inspections = dehn_reduce_counted(free2, w)
        assert inspections <= free2.window * len(w)


def test_rules_file_round_trip():
    sys = one_relator_dehn_system("abcd", SURFACE)
    again = parse_rules(format_rules(sys))
    assert again.rules == sys.rules
    assert again.delta == sys.delta
    with pytest.raises(SchemaError):
        parse_rules("a b -> 1\n")


# -- central extensions ----------------------------------------------------------


def test_central_examples():
    assert central_extension_resolve(f2z, ["z", "z"]) == 2
    assert central_extension_resolve(f2z, ["x", "z", "x^-1", "z"]) == 2
    assert central_extension_resolve(f2z, ["x", "y", "x^-1", "y^-1", "z"]) is None


def _direct_product_reference(word):
    zsum = sum(1 if s == "z" else -1 for s in word if s in ("z", "z^-1"))
    rest = [s for s in word if s not in ("z", "z^-1")]
    return zsum if not free_reduce(rest) else None


def test_central_resolve_matches_direct_product():
    rng = random.Random(12)
    for _ in range(2000):
        u = random_word(rng, F2Z, rng.randint(0, 60))
        w = u + invert_word([s for s in u if s not in ("z", "z^-1")]) if rng.random() < 0.5 else u
        assert central_extension_resolve(f2z, w) == _direct_product_reference(w)


@given(st.lists(st.sampled_from(F2Z), max_size=40))
def test_appending_z_shifts_resolution(w):
    n = central_extension_resolve(f2z, w)
    shifted = central_extension_resolve(f2z, w + ["z"])
    if n is None:
        assert shifted is None
    else:
        assert shifted == n + 1


def _z2_extension():
    """Z/2 extended by Z with the carry cocycle; the result is Z itself."""
    letters = {"s", "s^-1"}
    rules = {(p, q): () for p in letters for q in letters}
    base = DehnSystem(letters, 0, rules)
    sigma = lambda h, h2: 1 if len(h) % 2 and len(h2) % 2 else 0  # noqa: E731
    return CentralExtension(base, "z", sigma)


def test_nontrivial_cocycle_matches_integer_model():
    # s and s^-1 both map to 1 and z to 2 under the isomorphism with Z
    pres = _z2_extension()
    rng = random.Random(21)
    for _ in range(1000):
        w = random_word(rng, ["s", "s^-1", "z", "z^-1"], rng.randint(0, 30))
        value = sum({"s": 1, "s^-1": 1, "z": 2, "z^-1": -2}[c] for c in w)
        expected = value // 2 if value % 2 == 0 else None
        assert central_extension_resolve(pres, w) == expected


def test_central_extension_oracle(hnn):
    oracle = hnn.oracles["m"]
    assert isinstance(oracle, CentralExtensionOracle)
    assert oracle.is_trivial(["x", "z", "x^-1", "z^-1"])
    assert not oracle.is_trivial(["z"])


# -- quasiconvex membership --------------------------------------------------------


def test_cyclic_membership_examples():
    aut = build_cyclic_automaton(2, 1, ["x", "y"])
    assert quasiconvex_membership(aut, free2, ["x", "x", "x"]) == ("x", "x", "x")
    assert quasiconvex_membership(aut, free2, ["y"]) is None
    assert quasiconvex_membership(aut, free2, ["x", "y", "y^-1", "x"]) == ("x", "x")
    assert quasiconvex_membership(aut, free2, []) == ()


def test_build_cyclic_automaton_range():
    aut = build_cyclic_automaton(2, 1)
    assert aut.run(["x1"]) == ("x1",)
    assert aut.run(["x2"]) is None
    with pytest.raises(SchemaError):
        build_cyclic_automaton(2, 3)


def _power_search(w, letter="x"):
    for m in range(-len(w), len(w) + 1):
        power = [letter if m > 0 else letter + "^-1"] * abs(m)
        if free_is_trivial(list(w) + list(invert_word(power))):
            return tuple(power)
    return None


def test_cyclic_membership_matches_power_search():
    aut = cyclic_automaton("x")
    rng = random.Random(17)
    for j in range(1000):
        if j % 2:
            w = random_reduced_word(rng, ["x", "y"], rng.randint(0, 20))
        else:
            w = ("x" if rng.random() < 0.5 else "x^-1",) * rng.randint(0, 20)
        rep = quasiconvex_membership(aut, free2, w)
        assert rep == _power_search(w)
        if rep is not None:
            assert free_is_trivial(list(w) + list(invert_word(rep)))


def test_automaton_file_matches_builder():
    text = """
    states: 1
    initial: 1
    lambda: 1
    1 x -> 1 : x
    1 x^-1 -> 1 : x^-1
    """
    aut = parse_automaton(text)
    assert aut.transitions == cyclic_automaton("x").transitions
    with pytest.raises(SchemaError):
        parse_automaton("states: 1\ninitial: 1\n1 x -> 2 : x\n")
