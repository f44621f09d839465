from hypothesis import given, settings
from hypothesis import strategies as st

from permsimple.classify import (
    is_b_simple, is_b_simple_by_cycles, is_b_simple_by_word, is_c_simple, is_g_simple,
    is_s_simple,
)
from permsimple.perm_core import (
    Permutation, compose, coxeter_length, coxeter_normal_form, cycle_decomposition,
    evaluate_word, format_cycles, format_one_line, format_word, inverse, parse_cycles,
    parse_one_line, parse_permutation, tau,
)
from permsimple.polygon import irreducible_type, multiply_by_tau, reduction_terminals

perms = st.integers(1, 9).flatmap(
    lambda n: st.permutations(range(1, n + 1)).map(lambda w: Permutation(tuple(w))))


@given(perms)
def test_text_round_trips(p):
    assert parse_one_line(format_one_line(p)) == p
    assert parse_cycles(format_cycles(cycle_decomposition(p)), p.n) == p
    assert parse_permutation(format_word(coxeter_normal_form(p)), p.n) == p


@given(perms)
def test_normal_form_is_reduced(p):
    w = coxeter_normal_form(p)
    assert evaluate_word(w) == p and w.length == coxeter_length(p)


@given(perms)
def test_inverse_laws(p):
    assert compose(p, inverse(p)).is_identity()
    assert coxeter_length(inverse(p)) == coxeter_length(p)


@given(perms)
def test_classes_closed_under_inverse(p):
    q = inverse(p)
    for f in (is_s_simple, is_c_simple, is_g_simple, is_b_simple):
        assert f(p) == f(q)


@given(perms)
def test_s_simple_symmetries(p):
    n = p.n
    rev = Permutation(p.word[::-1])
    comp = Permutation(tuple(n + 1 - x for x in p.word))
    assert is_s_simple(p) == is_s_simple(rev) == is_s_simple(comp)


@given(perms)
def test_b_simple_routes(p):
    assert is_b_simple_by_cycles(p) == is_b_simple_by_word(p)


@given(perms, st.data())
def test_tau_product_random(p, data):
    if p.n < 2:
        return
    i = data.draw(st.integers(1, p.n - 1))
    assert multiply_by_tau(cycle_decomposition(p), i).to_permutation() == compose(p, tau(p.n, i))


@settings(max_examples=200)
@given(st.integers(5, 10).flatmap(lambda n: st.permutations(range(1, n + 1))))
def test_reduction_terminal_sizes(w):
    ends = reduction_terminals(tuple(w))
    sizes = {len(e) for e in ends}
    assert sizes == {3} or (len(ends) == 1 and min(sizes) >= 5)
    irreducible_type(tuple(w))
