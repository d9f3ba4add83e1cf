import pytest
from hypothesis import given, settings

from ordinal_cshp.notation import (
    OMEGA,
    ONE,
    ZERO,
    Kind,
    Order,
    ParseError,
    atom,
    classify,
    compare,
    depth,
    from_cnf,
    natural,
    parse,
    render,
)

from .oracles import ordinals


@pytest.mark.parametrize(
    "text, expected",
    [
        ("w^w*2 + w*3 + 5", "w^w*2 + w*3 + 5"),
        ("1 + w", "w"),
        ("w^(w_1)", "w_1"),
        ("w ^ w_1", "w_1"),
        ("2^w", "w"),
        ("(w+1)*2", "w*2 + 1"),
        ("w^2^3", "w^8"),
        ("w_ 3 + w_2", "w_3 + w_2"),
        ("0", "0"),
        ("w^0", "1"),
        ("w^(w+1)*3 + w^w", "w^(w + 1)*3 + w^w"),
    ],
)
def test_parse_normalizes(text, expected):
    assert render(parse(text)) == expected


def test_render_examples():
    assert render(ZERO) == "0"
    assert render(parse("w*3+5")) == "w*3 + 5"
    assert render(parse("w_2 + w")) == "w_2 + w"


@pytest.mark.parametrize(
    "text, offset",
    [("w_0", 0), ("w +", 3), ("(w", 2), ("w_65", 0), ("w ? 2", 2), ("", 0), ("w w", 2)],
)
def test_parse_errors_carry_position(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == offset
    assert 0 <= info.value.position <= len(text)


def test_w0_message_points_to_w():
    with pytest.raises(ParseError, match="write w"):
        parse("w_0")


def test_names_resolve_through_env():
    x = parse("a*2 + 1", {"a": OMEGA})
    assert x == parse("w*2 + 1")
    with pytest.raises(ParseError, match="unknown name"):
        parse("b")


def test_depth_limit(monkeypatch):
    # naturals have depth 1, so w^w^w has depth 4
    monkeypatch.setenv("ORDINAL_CSHP_MAX_DEPTH", "4")
    assert depth(parse("w^w^w")) == 4
    with pytest.raises(ParseError, match="depth"):
        parse("w^w^w^w")


def test_compare_examples():
    assert compare(OMEGA, parse("w+1")) is Order.LT
    assert compare(atom(1), parse("w^w")) is Order.GT
    assert compare(parse("w^w*2"), parse("w^w*2")) is Order.EQ
    assert atom(1) < atom(2)
    assert parse("w^(w_1 + 1)") > atom(1)


def test_classify_examples():
    assert classify(ZERO) is Kind.ZERO
    assert classify(parse("w+1")) is Kind.SUCCESSOR
    assert classify(parse("w^w*2")) is Kind.LIMIT
    assert classify(atom(5)) is Kind.LIMIT


def test_atoms_are_fixed_points():
    a = atom(1)
    assert from_cnf([(a, 1)]) == a
    assert a.cnf == ((a, 1),)
    assert depth(a) == 1
    assert depth(ZERO) == 0 and depth(natural(4)) == 1


def test_from_cnf_rejects_bad_input():
    with pytest.raises(ValueError):
        from_cnf([(ONE, 1), (OMEGA, 1)])
    with pytest.raises(ValueError):
        from_cnf([(ONE, 0)])


@settings(max_examples=300)
@given(ordinals(depth=4))
def test_round_trip(t):
    assert parse(render(t)) == t
    assert from_cnf(t.cnf) == t


@given(ordinals(), ordinals(), ordinals())
def test_compare_is_a_total_order(a, b, c):
    ab, ba = compare(a, b), compare(b, a)
    assert ab == -ba
    assert (ab is Order.EQ) == (a == b)
    if ab is Order.LT and compare(b, c) is Order.LT:
        assert compare(a, c) is Order.LT


@given(ordinals())
def test_limits_are_infinite(a):
    if classify(a) is Kind.LIMIT:
        assert a >= OMEGA


@given(ordinals())
def test_exponents_strictly_decrease(a):
    exps = [e for e, _ in a.cnf]
    assert all(x > y for x, y in zip(exps, exps[1:]))
    assert all(c >= 1 for _, c in a.cnf)
