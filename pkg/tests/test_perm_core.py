import pytest

from permsimple.errors import (
    DegreeMismatch, EmptyInput, NotABijection, ParseError, RunOutOfRange,
)
from permsimple.perm_core import (
    CoxeterWord, Permutation, all_permutations, build_tree, compose, coxeter_length,
    coxeter_normal_form, cycle_decomposition, evaluate_word, format_cycles,
    format_one_line, format_word, from_cycles, identity, inverse, parse_coxeter_word,
    parse_cycles, parse_one_line, parse_permutation, standard_sequence, tau,
    tree_coordinates,
)

P = Permutation((4, 1, 6, 2, 5, 3))


def test_right_multiplication_swaps_positions():
    assert (P * tau(6, 1)).word == (1, 4, 6, 2, 5, 3)
    assert compose(P, inverse(P)) == identity(6)


def test_running_example_representations():
    assert format_cycles(cycle_decomposition(P)) == "(4 2 1)(6 3)"
    assert format_word(coxeter_normal_form(P)) == "D(3,1)D(4,4)D(5,3)"
    assert standard_sequence(P) == (4, 2, 1, 5, 6, 3)
    assert coxeter_length(P) == 7


def test_thirteen_cycle_normal_form():
    p = from_cycles([(13, 12, 9, 8, 7, 5, 3, 2, 1, 4, 6, 10, 11)], 13)
    assert format_word(coxeter_normal_form(p)) == "D(3,1)D(5,4)D(9,6)D(10,10)D(12,11)"


@pytest.mark.parametrize("n", range(1, 7))
def test_normal_form_round_trip(n):
    for p in all_permutations(n):
        w = coxeter_normal_form(p)
        assert evaluate_word(w) == p
        assert w.length == coxeter_length(p)
        assert w.is_normal_shape()


def test_run_cycle():
    # D(k, j) is the cycle (k+1, k, ..., j)
    w = CoxeterWord(6, ((5, 2),))
    assert format_cycles(cycle_decomposition(evaluate_word(w))) == "(6 5 4 3 2)"


def test_parsers_and_printers():
    assert parse_one_line("[4, 1, 6, 2, 5, 3]") == P
    assert parse_cycles("(4 2 1)(6 3)") == P
    assert parse_cycles("()", 3) == identity(3)
    assert parse_permutation("D(3,1)D(4)D(5,3)") == P
    assert parse_permutation("e", 3) == identity(3)
    assert parse_permutation("4 1 6 2 5 3") == P
    assert format_one_line(P) == "4 1 6 2 5 3"
    assert parse_coxeter_word("Id", 4).runs == ()
    assert format_word(CoxeterWord(3)) == "e"


@pytest.mark.parametrize("text,exc", [
    ("", EmptyInput), ("1 1 2", NotABijection), ("1 x 2", ParseError),
])
def test_bad_one_line(text, exc):
    with pytest.raises(exc):
        parse_one_line(text)


def test_bad_words_and_degrees():
    with pytest.raises(RunOutOfRange):
        evaluate_word(CoxeterWord(3, ((3, 1),)))
    with pytest.raises(DegreeMismatch):
        compose(identity(3), identity(4))


def test_tree_of_running_example():
    t = build_tree(P)
    assert t.root == 1
    assert sorted(t.children(1)) == [2, 3]
    coords = tree_coordinates(t)
    assert coords[t.root] == (0.0, 0.0)
    for child, parent in ((c, p) for p in range(1, 7) for c in t.children(p)):
        (x1, y1), (x2, y2) = coords[parent], coords[child]
        assert abs(abs(x2 - x1) - abs(y2 - y1)) < 1e-12
