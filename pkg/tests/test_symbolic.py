import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdpkit.errors import LevelError, LevelMismatch, ParseError
from sdpkit.symbolic.engine import (all_index_triples, condition, elementary_form, evaluate_sides,
                                    generate_conditions, sym_mu, sym_phi, sym_phi_elementary, unit_form)
from sdpkit.symbolic.instantiate import evaluate, first_counterexample, holds_everywhere, instantiate
from sdpkit.symbolic.notation import (condition_from_json, condition_to_json, parse_condition, parse_word,
                                      render, render_word)
from sdpkit.symbolic.reference import (REFERENCE_FORMS, adjudicate, compare_row, reference_form,
                                       reference_ok, verify_reference)
from sdpkit.symbolic.similarity import (canonical_indices, canonical_representatives, class_ids,
                                        representative_indices, similarity_failures, similarity_key)
from sdpkit.symbolic.terms import LITERAL, Rules, letter, one
from sdpkit.experiments import soundness_failures

from conftest import small_random_system

ALL_FORMS = [c for mode in ("literal", "reduced") for k, j, i in all_index_triples(5)
             for c in generate_conditions(k, j, i, mode)]


# terms ---------------------------------------------------------------------------

def test_unit_laws():
    a, b = letter("a", 3), letter("b", 2)
    assert LITERAL.action(one(3), b) == b
    assert LITERAL.action(a, one(2)) == one(2)
    assert LITERAL.bracket(one(3), b, 1) == one(1)
    with pytest.raises(LevelError):
        LITERAL.bracket(b, a, 1)
    with pytest.raises(LevelError):
        a * b


def test_flattening_and_distribution():
    a, b, c = letter("a", 3), letter("b", 2), letter("c", 1)
    assert render_word(LITERAL.action(a, LITERAL.action(b, c))) == "^{a·b}c"
    bc = LITERAL.action(b, c) * c
    assert render_word(LITERAL.action(a, bc)) == "^{a}(^{b}cc)"
    # below the top level an action distributes over products
    assert render_word(Rules(top=4).action(a, bc)) == "^{a·b}c·^{a}c"
    assert render_word(Rules(top=3).action(a, bc)) == "^{a}(^{b}cc)"


# engine ---------------------------------------------------------------------------

def test_sym_phi_examples():
    a, b, c = letter("a", 3), letter("b", 2), letter("c", 1)
    f = sym_phi_elementary(a, b, 3)
    assert [render_word(f[l]) for l in (1, 2, 3)] == ["[a,b]^1", "^{a}b", "1"]
    v = sym_mu(elementary_form(3, c), elementary_form(3, b))
    g = sym_phi(a, v)
    assert [render_word(g[l]) for l in (1, 2)] == ["^{a}c·[a,b]^1", "^{a}b"]
    with pytest.raises(LevelError):
        sym_phi_elementary(b, a, 3)


def test_unit_form_is_neutral():
    u = elementary_form(3, letter("b", 2))
    assert sym_mu(unit_form(3), u) == u == sym_mu(u, unit_form(3))


WORKED_LHS = ["^{a}[b,c]^1·[a,^{b}c]^1·^{^{a·b}c}[a,b]^1", "^{a·b}c·[a,b]^2", "^{a}b", "a"]
WORKED_RHS = ["[a,b]^1·^{[a,b]^2·^{a}b}[a,c]^1·^{[a,b]^2}[^{a}b,^{a}c]^1", "[a,b]^2·^{^{a}b·a}c",
              "^{a}b", "a"]


@pytest.mark.parametrize("mode", ["literal", "reduced"])
def test_worked_example_lhs(mode):
    lhs, _ = evaluate_sides(4, 3, 2, mode)
    for l, text in enumerate(WORKED_LHS, start=1):
        assert lhs[l] == parse_word(text, 4, 3, 2, l)


def test_worked_example_rhs():
    _, rhs = evaluate_sides(4, 3, 2, "reduced")
    for l, text in enumerate(WORKED_RHS, start=1):
        assert rhs[l] == parse_word(text, 4, 3, 2, l)


@pytest.mark.parametrize("k", range(2, 7))
def test_vacuous_above_i(k):
    for j in range(1, k + 1):
        for i in range(1, j + 1):
            lhs, rhs = evaluate_sides(k, j, i, "reduced")
            assert all(lhs[l] == rhs[l] for l in range(i + 1, k + 1))
            assert len(generate_conditions(k, j, i)) == i


def test_condition_guards():
    with pytest.raises(LevelError):
        condition(3, 2, 1, 2)
    with pytest.raises(LevelError):
        evaluate_sides(2, 3, 1)


# notation ---------------------------------------------------------------------------

@pytest.mark.parametrize("c", ALL_FORMS, ids=lambda c: c.label())
def test_render_parse_roundtrip(c):
    back = parse_condition(render(c, prose=False), c.k, c.j, c.i, c.l)
    assert (back.lhs, back.rhs) == (c.lhs, c.rhs)


@pytest.mark.parametrize("c", ALL_FORMS[::3], ids=lambda c: c.label())
def test_json_roundtrip(c):
    assert condition_from_json(condition_to_json(c)) == c


def test_prose_rows():
    assert render(condition(2, 1, 1, 1)) == "Image(φ_2^1) ⊆ End(H_1)"
    assert render(condition(2, 1, 1, 1), prose=False) == "^{a}(bc) = ^{a}b·^{a}c"
    assert render(condition(2, 2, 2, 1)) == "1 = 1"


@pytest.mark.parametrize("text", ["[a,b", "^{a}", "a=b=c", "a·", "x", "[a,b]^"])
def test_parse_errors(text):
    with pytest.raises((ParseError, LevelError)):
        parse_condition(text if "=" in text else text + " = a", 3, 2, 1, 3)


def test_parse_accepts_star():
    assert parse_word("^{a*b}c", 3, 2, 1) == parse_word("^{a·b}c", 3, 2, 1)


# instantiation ------------------------------------------------------------------------

def test_instantiate_guards(s3_system):
    c = condition(3, 2, 1, 1)
    with pytest.raises(LevelMismatch):
        instantiate(c, s3_system, {"a": 0, "b": 0, "c": 0})
    with pytest.raises(LevelMismatch):
        evaluate(letter("a", 2), s3_system, {})
    with pytest.raises(LevelMismatch):
        evaluate(letter("a", 2), s3_system, {"a": 5})


def test_conditions_hold_on_s4(s4_system):
    for k, j, i in all_index_triples(3):
        for c in generate_conditions(k, j, i, "literal"):
            assert holds_everywhere(c, s4_system)
            assert first_counterexample(c, s4_system) is None


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(2, 3, 2), (3, 2, 2), (2, 2, 2, 2)]))
def test_literal_forms_are_exact(seed, orders):
    """Symbolic verdicts agree with the numeric component check on every system."""
    assert soundness_failures(small_random_system(seed, orders, bias=0.3)) == []


# similarity ---------------------------------------------------------------------------

def test_similarity_relations():
    assert similarity_failures(6) == []
    assert similarity_key(condition(4, 2, 1, 1)) == similarity_key(condition(4, 3, 2, 2))


def test_canonical_counts():
    # k forms with largest index k
    assert len(canonical_indices(3)) == 2 + 3
    assert len(canonical_indices(5)) == 14
    with pytest.raises(ValueError):
        canonical_representatives(1)


def test_representatives():
    assert representative_indices(5, 3, 1, 1) == (4, 3, 1, 1)
    assert representative_indices(5, 5, 3, 2) == (3, 3, 2, 1)
    assert representative_indices(4, 3, 2, 2) == (3, 2, 1, 1)


def test_class_ids_cover_representatives():
    forms = [c for k, j, i in all_index_triples(5) for c in generate_conditions(k, j, i)]
    ids = class_ids(forms)
    labels = {f"A[{k},{j},{i};{l}]" for k, j, i, l in canonical_indices(5)}
    assert set(ids) - {"vacuous"} <= labels
    assert set(ids) - {"vacuous"} == labels


# reference table ---------------------------------------------------------------------

def test_reference_forms_parse():
    assert len(REFERENCE_FORMS) == 14
    for idx in REFERENCE_FORMS:
        assert reference_form(*idx).indices == idx


@pytest.mark.parametrize("idx", [i for i in canonical_indices(4)])
def test_reference_exact_up_to_4(idx):
    assert compare_row(*idx).status == "exact"


def test_reference_k5_adjudicated():
    rows = {r.indices: r for r in verify_reference(5)}
    assert reference_ok(list(rows.values()))
    for idx in [(5, 4, 2, 1), (5, 4, 3, 1), (5, 4, 4, 1)]:
        row = rows[idx]
        assert row.status == "reference-refuted"
        assert row.adjudication.generated_confirmed and row.diff
    assert rows[(5, 4, 1, 1)].exact and rows[(5, 5, 4, 1)].exact


def test_adjudication_refutes_a_sabotaged_form():
    good = condition(3, 2, 1, 1)
    bad = parse_condition("[a,b]^1·^{a·b}c = ^{a·b}c·[a,b]^1", 3, 2, 1, 1)
    adj = adjudicate(good, bad)
    assert adj.generated_confirmed and not adj.expected_confirmed
