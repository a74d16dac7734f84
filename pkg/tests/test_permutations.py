import pytest
from hypothesis import given, strategies as st

from nilpotentizer import permutations as perms

import oracles


def test_parse_format_roundtrip():
    p = perms.parse_cycles("(1 2 3)(4 5)", 6)
    assert p == (1, 2, 0, 4, 3, 5)
    assert perms.format_cycles(p) == "(1 2 3)(4 5)"


def test_parse_identity_forms():
    assert perms.parse_cycles("()", 4) == (0, 1, 2, 3)
    assert perms.parse_cycles("", 4) == (0, 1, 2, 3)


def test_parse_comma_separated():
    assert perms.parse_cycles("(1, 2, 3)", 3) == perms.parse_cycles("(1 2 3)", 3)


@pytest.mark.parametrize("bad", ["(1 2", "(1 2)(2 3)", "(0 1)", "(1 5)", "(1 x)", "junk"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(ValueError):
        perms.parse_cycles(bad, 4)


def test_compose_convention_left_to_right():
    a = perms.parse_cycles("(1 2)", 3)
    b = perms.parse_cycles("(1 2 3)", 3)
    # apply a then b: 1 -> 2 -> 3
    assert perms.compose(a, b)[0] == 2


def test_inverse_and_order():
    p = perms.parse_cycles("(1 2 3 4)(5 6)", 6)
    assert perms.compose(p, perms.inverse(p)) == perms.identity(6)
    assert perms.perm_order(p) == 4


@given(st.permutations(list(range(6))))
def test_inverse_is_involution(raw):
    p = tuple(raw)
    assert perms.inverse(perms.inverse(p)) == p
    assert perms.compose(p, perms.inverse(p)) == perms.identity(6)


@given(st.permutations(list(range(5))), st.permutations(list(range(5))))
def test_compose_matches_oracle(a, b):
    assert perms.compose(tuple(a), tuple(b)) == oracles.compose(tuple(a), tuple(b))


def test_closure_order_s4():
    gens = [perms.parse_cycles("(1 2 3 4)", 4), perms.parse_cycles("(1 2)", 4)]
    assert perms.closure_order(gens) == 24


def test_closure_order_cap():
    gens = [perms.parse_cycles("(1 2 3 4 5 6 7)", 7)]
    with pytest.raises(ValueError):
        perms.closure_order(gens, cap=5)
