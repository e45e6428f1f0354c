import random

import pytest

from gogword.derivation import reference_solve
from gogword.fixtures import all_letters, random_word
from gogword.normal_form import (
    NormalWord, check_normal_word, is_reducible, normalize, shortened_verdict, trivial_edge_membership,
)
from gogword.oracles import ChargeMeter
from gogword.words import DUMMY, Verdict


def _strip(schema, word):
    return [s for s in word if schema.letters[s].kind == "vertex"
            or (schema.letters[s].kind == "edge" and not schema.edges[s].in_tree)]


def test_empty_word(zz):
    nw = normalize(zz, [])
    assert nw.path_length == 1
    assert nw.word() == (DUMMY, DUMMY)
    assert nw.lengths == [1]


def test_base_vertex_word_is_one_piece(zz):
    nw = normalize(zz, ["a", "a^-1", "a"])
    assert nw.path_length == 1
    assert nw.pieces == [["a", "a^-1", "a"]]
    assert nw.lengths == [4]


def test_golden_free_product_word(zz):
    nw = normalize(zz, zz.parse_word("a b"))
    assert nw.word() == ("*", "a", "t", "b", "T", "*")
    assert nw.lengths == [2, 2, 1]
    assert nw.dump() == "*a#b#*\n* t T *\n2 2 1"
    assert str(nw) == "* a t b T *"


def test_dummy_letters_are_dropped(zz):
    assert normalize(zz, ["*", "a", "*^-1"]).word() == ("*", "a", "*")


def test_normalize_output_is_structurally_valid(zzz, f2f2, hnn):
    rng = random.Random(1)
    for schema in (zzz, f2f2, hnn):
        letters = all_letters(schema)
        for _ in range(300):
            nw = normalize(schema, random_word(rng, letters, rng.randint(0, 30)))
            assert check_normal_word(schema, nw) == []
            assert sum(nw.lengths) == len(nw) - 1


def test_normalize_only_inserts_tree_letters(zzz):
    rng = random.Random(2)
    letters = all_letters(zzz)
    for _ in range(300):
        w = random_word(rng, letters, rng.randint(0, 30))
        nw = normalize(zzz, w)
        assert _strip(zzz, nw.word()) == _strip(zzz, w)


def test_normalize_preserves_element(zzz):
    rng = random.Random(3)
    letters = all_letters(zzz)
    for _ in range(200):
        w = random_word(rng, letters, rng.randint(0, 20))
        nw = normalize(zzz, w)
        probe = list(w) + list(zzz.invert(nw.word()))
        assert reference_solve(zzz, probe) is Verdict.TRIVIAL


def test_normalized_length_bound_with_walk_back(zz, zzz):
    # every letter costs at most |V| - 1 tree letters, plus the walk home and two dummies
    rng = random.Random(4)
    letters = all_letters(zzz)
    nv = len(zzz.vertices)
    for _ in range(500):
        w = random_word(rng, letters, rng.randint(0, 40))
        assert len(normalize(zzz, w)) <= nv * len(w) + nv + 1
    # a letter away from the base needs the walk out and back, which exceeds |V|*|w| + 2
    nw = normalize(zz, ["b"])
    assert nw.word() == ("*", "t", "b", "T", "*")
    assert len(nw) == 5 > 2 * 1 + 2


def test_is_reducible_trivial_edges(zz):
    nw = normalize(zz, zz.parse_word("a b b^-1 a b"))
    assert nw.word() == zz.parse_word("* a t b b^-1 T a t b T *")
    assert is_reducible(zz, nw, 2) is not None
    assert is_reducible(zz, nw, 1) is None
    assert is_reducible(zz, nw, 4) is None
    with pytest.raises(IndexError):
        is_reducible(zz, nw, 0)


def test_is_reducible_admissible(hnn):
    nw = normalize(hnn, hnn.parse_word("t x z T"))
    assert is_reducible(hnn, nw, 2) == (1, 1, "1")
    nw = normalize(hnn, hnn.parse_word("t y T"))
    assert is_reducible(hnn, nw, 2) is None
    nw = normalize(hnn, hnn.parse_word("t x t"))
    assert is_reducible(hnn, nw, 2) is None


def test_is_reducible_with_custom_membership(zz):
    nw = normalize(zz, zz.parse_word("a b T"))
    seen = []

    def member(edge, word):
        seen.append((edge, tuple(word)))
        return None

    assert is_reducible(zz, nw, 2, member) is None
    assert seen == [("t", ("b",))]


def test_shortened_verdict_skips_oracle_for_long_words(zz):
    meter = ChargeMeter()
    nw = normalize(zz, zz.parse_word("a b"))
    assert nw.path_length == 3
    assert shortened_verdict(zz, nw, meter=meter) is Verdict.NONTRIVIAL
    assert meter.calls == 0


def test_shortened_verdict_single_piece(zz):
    meter = ChargeMeter()
    assert shortened_verdict(zz, normalize(zz, ["a", "a^-1"]), meter=meter) is Verdict.TRIVIAL
    assert shortened_verdict(zz, normalize(zz, ["a"]), meter=meter) is Verdict.NONTRIVIAL
    assert meter.calls == 2


def test_check_normal_word_reports():
    from gogword.fixtures import load_fixture
    zz = load_fixture("zz")
    bad = NormalWord([["b"]], ["*", "*"], [2])
    assert any("not in generators" in p for p in check_normal_word(zz, bad))
    bad = NormalWord([["a"], []], ["*", "T", "*"], [2, 1])
    assert any("do not meet" in p for p in check_normal_word(zz, bad))
    bad = NormalWord([["a"]], ["*", "*"], [0])
    assert any("positive" in p for p in check_normal_word(zz, bad))
    bad = NormalWord([["a"]], ["*"], [2])
    assert any("inconsistent" in p for p in check_normal_word(zz, bad))


def test_trivial_edge_membership_charges(zz):
    meter = ChargeMeter()
    member = trivial_edge_membership(zz, meter)
    assert member("t", ["b", "b^-1"]) is not None
    assert member("t", ["b"]) is None
    assert (meter.total, meter.calls) == (3, 2)


def test_copy_is_deep(zz):
    nw = normalize(zz, zz.parse_word("a b"))
    other = nw.copy()
    other.pieces[0].append("a")
    assert nw.pieces[0] == ["a"]
