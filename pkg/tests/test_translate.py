import itertools
import random

import pytest
from hypothesis import given

from meadows.checker import eval_term, random_corpus, random_term
from meadows.models import build_model, gf_totalized
from meadows.syntax import parse, parse_equation, parse_term, pretty
from meadows.terms import (
    Equation,
    InvNimd,
    Mul,
    Signature,
    SignatureError,
    Var,
    free_vars,
    is_legal,
)
from meadows.translate import MD_TO_NIMD, NIMD_TO_MD, TranslationSpec, to_md, to_nimd

from strategies import terms

MD, NIMD = Signature.MD, Signature.NIMD


def test_to_md_defining_equation_for_one():
    got = to_md(parse_term("x^~", NIMD), 1)
    assert got == parse_term("x^-1 + (1 - x * x^-1)", MD)


def test_to_md_defining_equation_for_two():
    got = to_md(parse_term("0^~", NIMD), 2)
    assert got == parse_term("0^-1 + ((0 + 1) + 1) * (1 - 0 * 0^-1)", MD)


def test_to_md_fixes_inverse_free_terms():
    t = parse_term("x + y", NIMD)
    assert to_md(t, 1) == t
    assert to_md(parse_term("1", NIMD), 3) == parse_term("1", MD)


def test_to_md_translates_nested_occurrences():
    got = to_md(parse_term("(x^~)^~", NIMD), 1)
    inner = parse_term("x^-1 + (1 - x * x^-1)", MD)
    expected = parse(f"({pretty(inner)})^-1 + (1 - ({pretty(inner)}) * ({pretty(inner)})^-1)", MD)
    assert got == expected


def test_to_nimd_defining_equation():
    assert to_nimd(parse_term("x^-1", MD)) == parse_term("x * (x^~ * x^~)", NIMD)
    assert to_nimd(parse_term("1", MD)) == parse_term("1", NIMD)


def test_to_nimd_nested():
    v = Mul(Var("x"), Mul(InvNimd(Var("x")), InvNimd(Var("x"))))
    expected = Mul(v, Mul(InvNimd(v), InvNimd(v)))
    assert to_nimd(parse_term("(x^-1)^-1", MD)) == expected


def test_equations_translate_componentwise():
    eq = parse_equation("x^~ = 1", NIMD)
    got = to_md(eq, 1)
    assert got == parse_equation("x^-1 + (1 - x * x^-1) = 1", MD)
    back = to_nimd(parse_equation("x^-1 = 0", MD))
    assert back == parse_equation("x * (x^~ * x^~) = 0", NIMD)


def test_wrong_signature_is_rejected():
    with pytest.raises(SignatureError):
        to_md(parse_term("x^-1", MD), 1)
    with pytest.raises(SignatureError):
        to_nimd(parse_term("x^~", NIMD))
    with pytest.raises(ValueError):
        to_md(parse_term("x^~", NIMD), 0)


@given(terms(sig=NIMD))
def test_to_md_output_is_md_legal_and_preserves_variables(t):
    for n in (1, 2):
        out = to_md(t, n)
        assert is_legal(out, MD)
        assert free_vars(out) == free_vars(t)


@given(terms(sig=MD))
def test_to_nimd_output_is_nimd_legal_and_preserves_variables(t):
    out = to_nimd(t)
    assert is_legal(out, NIMD)
    assert free_vars(out) == free_vars(t)


def test_semantic_round_trip_in_finite_meadows():
    # translating md -> nimd -> md (n = 1) changes the tree but never the
    # value, in any zero-totalized prime field or product of such
    rng = random.Random(21)
    models = [gf_totalized(3, 0, MD), gf_totalized(5, 0, MD),
              build_model("prod(gf:2:0,gf:3:0)", MD)]
    for _ in range(40):
        t = random_term(rng, 4, ("x", "y"), MD)
        round_tripped = to_md(to_nimd(t), 1)
        names = sorted(free_vars(t))
        for m in models:
            for combo in itertools.product(m.elements, repeat=len(names)):
                v = dict(zip(names, combo))
                assert eval_term(m, round_tripped, v) == eval_term(m, t, v)


def test_translation_spec():
    spec = TranslationSpec(NIMD_TO_MD, 2)
    assert spec.apply(parse_term("x^~", NIMD)) == to_md(parse_term("x^~", NIMD), 2)
    back = TranslationSpec(MD_TO_NIMD)
    assert back.apply(parse_term("x^-1", MD)) == to_nimd(parse_term("x^-1", MD))
    with pytest.raises(ValueError):
        TranslationSpec("sideways")
    with pytest.raises(ValueError):
        TranslationSpec(NIMD_TO_MD, 0)


def test_translated_corpus_stays_equation_shaped():
    for eq in random_corpus(20, seed=5):
        out = to_md(eq, 1)
        assert isinstance(out, Equation)
