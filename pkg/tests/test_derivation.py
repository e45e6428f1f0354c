import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gogword.baselines import gen_slow_many
from gogword.derivation import (
    ADMISSIBLE, TRIVIAL_EDGES, DerivationTrace, EngineMismatch, log2_ceil, middle_derive_admissible,
    middle_derive_trivial_edges, reference_reduce, reference_solve, solve,
)
from gogword.fixtures import all_letters, hnn_conjugate, hnn_letters, hnn_member, random_word, word_corpus
from gogword.normal_form import is_reducible, normalize
from gogword.oracles import ChargeMeter
from gogword.words import Verdict


def _hnn_reference(hnn, word):
    return reference_solve(hnn, word, hnn_member, hnn_conjugate)


def test_log2_ceil():
    assert [log2_ceil(m) for m in (1, 2, 3, 4, 5, 8, 9, 1024, 1025)] == [0, 1, 2, 2, 3, 3, 4, 10, 11]


def test_shortened_input_is_unchanged(zz):
    nw = normalize(zz, zz.parse_word("a b a b"))
    out, was_trivial = middle_derive_trivial_edges(zz, nw)
    assert was_trivial
    assert out == nw


def test_worked_example_trace(zz):
    nw = normalize(zz, zz.parse_word("a b b^-1 a b"))
    trace = DerivationTrace()
    out, was_trivial = middle_derive_trivial_edges(zz, nw, trace=trace)
    assert not was_trivial
    assert out.word() == ("*", "a", "a", "t", "b", "T", "*")
    assert out.lengths == [7, 2, 1]
    assert trace.split_sequence == [0, 3, 4, 5]
    assert trace.changed == [True, False, False]
    assert trace.i_core == [2]
    assert trace.i_red == [(2, 3)]
    # counter starts at the derived length 3 and min(2 + 2, 3 + 1) is subtracted
    assert trace.counters == [(2, 3, [4])]
    assert solve(zz, zz.parse_word("a b b^-1 a b")).verdict is Verdict.NONTRIVIAL


def test_input_word_is_not_modified(zz):
    nw = normalize(zz, zz.parse_word("a b b^-1 a b"))
    before = nw.copy()
    middle_derive_trivial_edges(zz, nw)
    assert nw == before


@pytest.mark.parametrize("k", list(range(1, 65)))
def test_nested_commutator_family_is_trivial(zz, k):
    report = solve(zz, gen_slow_many(k), check_invariants=True)
    assert report.verdict is Verdict.TRIVIAL
    assert report.iterations <= report.bound


def test_split_sequence_runs_from_zero_to_n(zz):
    rng = random.Random(5)
    for w in word_corpus(rng, zz, 200, 40):
        nw = normalize(zz, w)
        trace = DerivationTrace()
        out, _ = middle_derive_trivial_edges(zz, nw, trace=trace)
        assert trace.split_sequence[0] == 0
        assert trace.split_sequence[-1] == nw.path_length
        assert len(trace.split_sequence) == out.path_length + 1
        assert all(a < b for a, b in zip(trace.split_sequence, trace.split_sequence[1:]))
        for start, c0, difs in trace.counters:
            assert c0 == nw.lengths[start - 1]
            # the scan stops as soon as the counter goes negative
            assert all(c0 - sum(difs[:j + 1]) >= 0 for j in range(len(difs) - 1))


def test_each_derivation_preserves_element(zz, f2f2):
    rng = random.Random(6)
    for schema in (zz, f2f2):
        for w in word_corpus(rng, schema, 150, 40):
            nw = normalize(schema, w)
            for _ in range(3):
                out, was_trivial = middle_derive_trivial_edges(schema, nw)
                probe = list(nw.word()) + list(schema.invert(out.word()))
                assert reference_solve(schema, probe) is Verdict.TRIVIAL
                if was_trivial:
                    break
                nw = out


def test_each_admissible_derivation_preserves_element(hnn):
    rng = random.Random(7)
    for w in word_corpus(rng, hnn, 150, 30):
        nw = normalize(hnn, w)
        for _ in range(3):
            out, was_trivial = middle_derive_admissible(hnn, nw)
            probe = list(nw.word()) + list(hnn.invert(out.word()))
            assert _hnn_reference(hnn, probe) is Verdict.TRIVIAL
            if was_trivial:
                break
            nw = out


def test_reducible_pieces_double_after_each_derivation(zz, zzz, f2f2, hnn):
    rng = random.Random(8)
    for schema in (zz, zzz, f2f2, hnn):
        for w in word_corpus(rng, schema, 200, 60):
            nw = normalize(schema, w)
            j = 0
            while nw.path_length > 1:
                nw, was_trivial = (middle_derive_admissible if schema.is_admissible
                                   else middle_derive_trivial_edges)(schema, nw)
                j += 1
                for i in range(1, nw.path_length + 1):
                    if is_reducible(schema, nw, i) is not None:
                        assert nw.lengths[i - 1] >= 2 ** j
                if was_trivial:
                    break


def test_check_invariants_on_corpora(zz, zzz, f2f2, hnn, f2_index3):
    rng = random.Random(9)
    for schema in (zz, zzz, f2f2, hnn, f2_index3):
        for w in word_corpus(rng, schema, 100, 50):
            report = solve(schema, w, check_invariants=True)
            assert report.iterations <= report.bound
            for entry in report.invariant_log:
                assert entry["sum_lengths"] == report.input_length - 1


def test_engine_mismatch(zz, hnn):
    with pytest.raises(EngineMismatch):
        solve(zz, ["a"], engine=ADMISSIBLE)
    with pytest.raises(EngineMismatch):
        solve(hnn, ["x"], engine=TRIVIAL_EDGES)
    with pytest.raises(EngineMismatch):
        solve(zz, ["a"], engine="fast")


def test_empty_and_dummy_words(zz):
    for w in ([], ["*"], ["*", "*^-1"]):
        report = solve(zz, w)
        assert report.verdict is Verdict.TRIVIAL
        assert (report.iterations, report.charge) == (0, 0)


def test_meter_is_shared(zz):
    meter = ChargeMeter()
    report = solve(zz, gen_slow_many(4), meter=meter)
    assert report.charge == meter.total > 0
    assert report.oracle_calls == meter.calls


@pytest.mark.parametrize("text,expected", [
    ("t x T z^-1", Verdict.TRIVIAL),
    ("t x z T y^-1 z^-1", Verdict.TRIVIAL),
    ("t t x T T y^-1", Verdict.TRIVIAL),
    ("t x z T", Verdict.NONTRIVIAL),
    ("t y T", Verdict.NONTRIVIAL),
    ("x z x^-1 z^-1", Verdict.TRIVIAL),
])
def test_loop_examples(hnn, text, expected):
    w = hnn.parse_word(text)
    assert solve(hnn, w, check_invariants=True).verdict is expected
    assert _hnn_reference(hnn, w) is expected


def test_admissible_agrees_with_independent_reference(hnn):
    rng = random.Random(10)
    for w in word_corpus(rng, hnn, 500, 40):
        assert solve(hnn, w).verdict is _hnn_reference(hnn, w)


def test_default_conjugator_matches_independent_one(hnn):
    rng = random.Random(11)
    for w in word_corpus(rng, hnn, 300, 30):
        ours = reference_solve(hnn, w)
        assert ours is _hnn_reference(hnn, w)


def test_reference_reduce_leaves_no_reducible_piece(zzz):
    rng = random.Random(12)
    for w in word_corpus(rng, zzz, 200, 40):
        out = reference_reduce(zzz, normalize(zzz, w))
        assert all(is_reducible(zzz, out, i) is None for i in range(1, out.path_length + 1))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(["a", "a^-1", "b", "b^-1", "t", "T"]), max_size=40))
def test_solve_agrees_with_reference(w):
    from gogword.fixtures import load_fixture
    zz = load_fixture("zz")
    assert solve(zz, w).verdict is reference_solve(zz, w)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(hnn_letters()), max_size=30))
def test_admissible_solve_agrees_with_reference(w):
    from gogword.fixtures import load_fixture
    hnn = load_fixture("hnn_f2z")
    assert solve(hnn, w).verdict is _hnn_reference(hnn, w)


def test_trivial_words_stay_trivial_after_conjugation(zzz):
    rng = random.Random(13)
    letters = all_letters(zzz)
    for w in word_corpus(rng, zzz, 90, 30)[1::3]:
        g = random_word(rng, letters, rng.randint(0, 10))
        conj = list(g) + list(w) + list(zzz.invert(g))
        assert solve(zzz, conj).verdict is solve(zzz, w).verdict is Verdict.TRIVIAL


def test_single_generator_is_nontrivial(zz):
    report = solve(zz, ["a"])
    assert report.verdict is Verdict.NONTRIVIAL
    assert report.iterations <= 1
