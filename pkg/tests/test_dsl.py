import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURE_NAMES, fixture_path
from ttg.dsl import parse, render, tokenize
from ttg.errors import ParseError, SemanticError
from ttg.explorer import labeled_posets

P1_SPACES = "space S { points: x y z; order: y < x, z < x; }\nspace X { points: yh zh; }\n"


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_round_trip(name):
    wb = parse(fixture_path(name).read_text())
    text = render(wb)
    again = parse(text)
    assert again == wb
    assert render(again) == text
    assert again.spaces == wb.spaces and again.maps == wb.maps


def test_P1_loads_with_closure(P1):
    S = P1.spaces["S"]
    leq = {(a, b) for a in S.points for b in S.points if S.leq(S.index(a), S.index(b))}
    assert leq == {("x", "x"), ("y", "y"), ("z", "z"), ("y", "x"), ("z", "x")}


def test_empty_point_list_is_parse_error():
    with pytest.raises(ParseError) as exc:
        parse("space E { points: ; }")
    assert (exc.value.line, exc.value.col) == (1, 19)


def test_non_monotone_map_is_semantic_error():
    text = P1_SPACES.replace("space X { points: yh zh; }",
                             "space X { points: yh zh; order: zh < yh; }")
    text += "map f : X -> S { yh -> x, zh -> z }\n"
    parse(text)  # monotone: zh < yh goes to z < x
    bad = P1_SPACES.replace("space X { points: yh zh; }",
                            "space X { points: yh zh; order: yh < zh; }")
    bad += "map f : X -> S { yh -> x, zh -> z }\n"
    with pytest.raises(SemanticError, match="map not continuous") as exc:
        parse(bad)
    assert exc.value.line == 3


def test_undefined_identifier():
    with pytest.raises(SemanticError, match="undefined map 'eta'"):
        parse(P1_SPACES + "support s = pullback(eta)\n")
    with pytest.raises(SemanticError, match="undefined object"):
        parse(P1_SPACES + "map e : X -> S { yh -> y, zh -> z }\nsupport s = pullback(e)\n"
              "object A = gamma(s, {yh}) * B\n")


def test_non_surjective_pushforward():
    text = P1_SPACES + "map r : X -> S { yh -> y, zh -> z }\nsupport s = pushforward(r)\n"
    with pytest.raises(SemanticError, match="not surjective"):
        parse(text)


def test_antisymmetry_is_semantic_error():
    with pytest.raises(SemanticError, match="antisymmetric"):
        parse("space S { points: a b; order: a < b, b < a; }")


def test_duplicate_identifier():
    with pytest.raises(SemanticError, match="declared twice"):
        parse("space S { points: a; }\nspace S { points: b; }")


def test_syntax_error_location():
    with pytest.raises(ParseError) as exc:
        parse("space S { points: a b;\n  order: a b; }")
    assert exc.value.line == 2


def test_bad_character():
    with pytest.raises(ParseError, match="unexpected character"):
        tokenize("space S { points: a$ ; }")


def test_comments_and_chains():
    wb = parse("# header\nspace S { points: a b c; order: c < b < a; } # trailing\n")
    S = wb.spaces["S"]
    assert S.leq(S.index("c"), S.index("a"))


def test_table_support_and_objects():
    text = ("space S { points: a b; order: b < a; }\n"
            "space X { points: p q; order: p < q; }\n"
            "support t = table S -> X { {a b} -> {p q}; {b} -> {p} }\n"
            "object one = compact S {a b}\n"
            "object g = gammapt(t, q) * one\n"
            "object s = sum(g, one)\n")
    wb = parse(text)
    assert wb.supports["t"].eta_map.as_dict() == {"p": "b", "q": "a"}
    assert wb.objects["g"].supp == wb.spaces["S"].mask_of(["a"])
    assert parse(render(wb)) == wb


def test_compact_must_be_closed():
    with pytest.raises(SemanticError, match="not closed"):
        parse("space S { points: a b; order: b < a; }\nobject o = compact {a}\n")


def test_ambiguous_compact_space():
    with pytest.raises(SemanticError, match="cannot infer"):
        parse("space S { points: a; }\nspace T { points: a; }\nobject o = compact {a}\n")


def test_table_missing_principal_value():
    with pytest.raises(SemanticError, match="no value"):
        parse("space S { points: a b; }\nspace X { points: p; }\n"
              "support t = table S -> X { {a} -> {p} }\n")


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.sampled_from(labeled_posets(n))))
def test_render_round_trip_random_spaces(sp):
    pairs = ", ".join(f"{a} < {b}" for a, b in sp.order_pairs())
    order = f" order: {pairs};" if pairs else ""
    wb = parse(f"space S {{ points: {' '.join(sp.points)};{order} }}")
    assert wb.spaces["S"] == sp
    assert parse(render(wb)) == wb
