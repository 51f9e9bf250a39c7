"""Totalized fields and meadows as executable algebra.

Terms over signatures with one or two totalized inverse operators,
axiom suites shipped as data, exact models (rationals and prime fields,
their products, and the constructions swapping one inverse for the
other), an equation checker with exhaustive and seeded-random modes,
counterexample search over small finite models, and the syntactic
translations connecting the two inverse operators.
"""

from .axioms import (
    AxiomSuite,
    derived_md,
    derived_nimd1,
    derived_nimd_n,
    extra_initiality_axiom,
    guarded_formulas,
    suite_by_id,
    suite_cr,
    suite_md,
    suite_nimd,
    suite_nimd1,
    suite_nimd_n,
)
from .checker import (
    CheckReport,
    EnumerationLimitError,
    ModelFamily,
    NotFiniteError,
    SearchHit,
    SuiteReport,
    TransferReport,
    UnboundVariableError,
    Verdict,
    check_suite,
    eval_term,
    find_counterexample,
    holds_exhaustive,
    holds_sampled,
    is_violation,
    random_corpus,
    random_equation,
    random_term,
    transfer_check,
)
from .models import (
    DescriptorError,
    Element,
    Model,
    ModelError,
    PreconditionError,
    build_model,
    format_element,
    gf_totalized,
    involutize,
    is_invertible,
    mixed_expansion,
    numeral_value,
    product,
    rational_totalized,
    retotalize,
    same_operation_tables,
)
from .syntax import ParseError, parse, parse_equation, parse_formula, parse_term, pretty
from .terms import (
    Add,
    Condition,
    ConditionalFormula,
    Equation,
    InvMd,
    InvNimd,
    MeadowError,
    Mul,
    Neg,
    ONE,
    One,
    Signature,
    SignatureError,
    Term,
    Var,
    ZERO,
    Zero,
    as_formula,
    free_vars,
    formula_free_vars,
    formula_signature,
    is_legal,
    minimal_signature,
    numeral,
    subst,
)
from .translate import MD_TO_NIMD, NIMD_TO_MD, TranslationSpec, to_md, to_nimd

__version__ = "0.1.0"
