import pytest
from hypothesis import given
from hypothesis import strategies as st

from meadows.terms import (
    ONE,
    ZERO,
    Add,
    Condition,
    ConditionalFormula,
    Equation,
    InvMd,
    InvNimd,
    Mul,
    Neg,
    Signature,
    SignatureError,
    Var,
    as_formula,
    formula_free_vars,
    formula_signature,
    free_vars,
    is_legal,
    map_terms,
    minimal_signature,
    numeral,
    subst,
)

from strategies import terms


X, Y = Var("x"), Var("y")


def test_numeral_base_cases():
    assert numeral(0) == ZERO
    assert numeral(1) == Add(ZERO, ONE)
    assert numeral(3) == Add(Add(Add(ZERO, ONE), ONE), ONE)


def test_numeral_rejects_negatives():
    with pytest.raises(ValueError):
        numeral(-1)


def _count_ones(t):
    if t == ONE:
        return 1
    if isinstance(t, Add):
        return _count_ones(t.left) + _count_ones(t.right)
    return 0


@given(st.integers(min_value=0, max_value=60))
def test_numeral_contains_exactly_n_ones(n):
    assert _count_ones(numeral(n)) == n


def test_free_vars_examples():
    assert free_vars(Mul(X, InvMd(X))) == {"x"}
    assert free_vars(Add(ZERO, ONE)) == frozenset()
    assert free_vars(InvMd(InvMd(X))) == {"x"}


def test_subst_examples():
    assert subst(Add(X, Y), {"x": ONE}) == Add(ONE, Y)
    assert subst(InvMd(X), {"x": ZERO}) == InvMd(ZERO)
    assert subst(X, {}) == X


def test_subst_signature_check():
    with pytest.raises(SignatureError):
        subst(X, {"x": InvNimd(ZERO)}, sig=Signature.MD)
    # the same replacement is fine under a signature admitting it
    assert subst(X, {"x": InvNimd(ZERO)}, sig=Signature.NIMD) == InvNimd(ZERO)


@given(terms())
def test_subst_identity(t):
    assert subst(t, {}) == t
    assert subst(t, {"unused_name": ONE}) == t


@given(terms(variables=("x", "y")))
def test_subst_with_closed_term_removes_variable(t):
    closed = Add(ONE, ONE)
    assert free_vars(subst(t, {"x": closed})) == free_vars(t) - {"x"}


def test_structural_equality_is_syntactic():
    # 0 + 1 and 1 denote the same value in every model but differ as trees
    assert numeral(1) != ONE
    assert Add(X, Y) != Add(Y, X)


def test_legality_per_signature():
    t_md = InvMd(X)
    t_ni = InvNimd(X)
    assert is_legal(t_md, Signature.MD) and not is_legal(t_md, Signature.NIMD)
    assert is_legal(t_ni, Signature.NIMD) and not is_legal(t_ni, Signature.MD)
    assert is_legal(Mul(t_md, t_ni), Signature.MIXED)
    assert not is_legal(t_md, Signature.CR)
    assert is_legal(Add(X, Neg(Y)), Signature.CR)


def test_minimal_signature():
    assert minimal_signature(Add(X, Y)) == Signature.CR
    assert minimal_signature(InvMd(X)) == Signature.MD
    assert minimal_signature(InvNimd(X)) == Signature.NIMD
    assert minimal_signature(Mul(InvMd(X), InvNimd(Y))) == Signature.MIXED


def test_as_formula_degenerate_equation():
    eq = Equation(X, Y)
    f = as_formula(eq)
    assert f.antecedents == ()
    assert f.conclusion == Condition(X, Y, "=")
    assert as_formula(f) is f


def test_formula_helpers():
    f = ConditionalFormula(
        (Condition(X, ZERO, "!="),),
        Condition(Mul(X, InvMd(X)), ONE, "="),
    )
    assert formula_free_vars(f) == {"x"}
    assert formula_signature(f) == Signature.MD
    flipped = map_terms(f, lambda t: subst(t, {"x": Y}))
    assert formula_free_vars(flipped) == {"y"}
    assert flipped.antecedents[0].relation == "!="


def test_condition_rejects_unknown_relation():
    with pytest.raises(ValueError):
        Condition(X, Y, "<=")
