"""Terms, equations, and conditional formulas over totalized-field signatures.

The term language has the constants 0 and 1, binary + and *, unary
negation, variables, and two postfix inverse operators: the
zero-totalized inverse (written ``^-1`` in concrete syntax) and the
totalized non-involutive inverse (written ``^~``).  Two operators exist
because each can be defined in terms of the other, and those defining
equations mix both symbols in one term.

A single Term type serves every signature.  Which inverse nodes are
legal is decided by a Signature value, and legality is checked where it
matters (the parser, substitution, model evaluation) instead of being
baked into the node types.

Terms are immutable and compare structurally, node by node.  Semantic
equality (equality of values in a model) is the checker's business.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Mapping


class MeadowError(Exception):
    """Base class for all errors raised by this package."""


class SignatureError(MeadowError):
    """An inverse symbol occurs where the signature does not admit it."""


class Signature(enum.Enum):
    CR = "cr"        # ring signature: no inverse symbol
    MD = "md"        # adds the zero-totalized inverse ^-1
    NIMD = "nimd"    # adds the totalized non-involutive inverse ^~
    MIXED = "mixed"  # admits both inverse symbols

    @property
    def admits_inv_md(self) -> bool:
        return self in (Signature.MD, Signature.MIXED)

    @property
    def admits_inv_nimd(self) -> bool:
        return self in (Signature.NIMD, Signature.MIXED)


class Term:
    """Base class of term nodes; the concrete nodes are frozen dataclasses."""


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class One(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Neg(Term):
    operand: Term


@dataclass(frozen=True)
class InvMd(Term):
    """Zero-totalized multiplicative inverse (postfix ^-1)."""

    operand: Term


@dataclass(frozen=True)
class InvNimd(Term):
    """Totalized non-involutive multiplicative inverse (postfix ^~)."""

    operand: Term


ZERO = Zero()
ONE = One()


def numeral(n: int) -> Term:
    """The term for the natural number n, built by adding ones onto zero.

    numeral(0) is 0, numeral(1) is 0 + 1, numeral(3) is ((0 + 1) + 1) + 1.
    """
    if n < 0:
        raise ValueError(f"numeral() needs a natural number, got {n}")
    t: Term = ZERO
    for _ in range(n):
        t = Add(t, ONE)
    return t


def free_vars(t: Term) -> frozenset[str]:
    """The set of variable names occurring in t."""
    match t:
        case Var(name):
            return frozenset((name,))
        case Add(l, r) | Mul(l, r):
            return free_vars(l) | free_vars(r)
        case Neg(u) | InvMd(u) | InvNimd(u):
            return free_vars(u)
        case _:
            return frozenset()


def subst(t: Term, binding: Mapping[str, Term], sig: Signature | None = None) -> Term:
    """Simultaneous replacement of variables by terms.

    No operator binds variables, so this is plain tree replacement.
    When ``sig`` is given, every replacement term is checked to be legal
    under it before any rewriting happens.
    """
    if sig is not None:
        for replacement in binding.values():
            check_legal(replacement, sig)
    if not binding:
        return t

    def go(t: Term) -> Term:
        match t:
            case Var(name):
                return binding.get(name, t)
            case Add(l, r):
                return Add(go(l), go(r))
            case Mul(l, r):
                return Mul(go(l), go(r))
            case Neg(u):
                return Neg(go(u))
            case InvMd(u):
                return InvMd(go(u))
            case InvNimd(u):
                return InvNimd(go(u))
            case _:
                return t

    return go(t)


def is_legal(t: Term, sig: Signature) -> bool:
    """True when every inverse node of t is admitted by sig."""
    match t:
        case InvMd(u):
            return sig.admits_inv_md and is_legal(u, sig)
        case InvNimd(u):
            return sig.admits_inv_nimd and is_legal(u, sig)
        case Add(l, r) | Mul(l, r):
            return is_legal(l, sig) and is_legal(r, sig)
        case Neg(u):
            return is_legal(u, sig)
        case _:
            return True


def check_legal(t: Term, sig: Signature) -> None:
    if not is_legal(t, sig):
        raise SignatureError(
            f"term uses an inverse symbol not admitted by signature {sig.value}")


def minimal_signature(t: Term) -> Signature:
    """The smallest signature admitting every inverse node of t."""
    md = nimd = False
    stack = [t]
    while stack:
        node = stack.pop()
        match node:
            case InvMd(u):
                md = True
                stack.append(u)
            case InvNimd(u):
                nimd = True
                stack.append(u)
            case Add(l, r) | Mul(l, r):
                stack.append(l)
                stack.append(r)
            case Neg(u):
                stack.append(u)
    if md and nimd:
        return Signature.MIXED
    if md:
        return Signature.MD
    if nimd:
        return Signature.NIMD
    return Signature.CR


def _join(a: Signature, b: Signature) -> Signature:
    if a is b or b is Signature.CR:
        return a
    if a is Signature.CR:
        return b
    return Signature.MIXED


EQ = "="
NE = "!="


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Condition:
    """``lhs = rhs`` or ``lhs != rhs``, used as antecedent or conclusion."""

    lhs: Term
    rhs: Term
    relation: str = EQ

    def __post_init__(self) -> None:
        if self.relation not in (EQ, NE):
            raise ValueError(f"relation must be {EQ!r} or {NE!r}, got {self.relation!r}")


@dataclass(frozen=True)
class ConditionalFormula:
    """Zero or more (in)equality antecedents guarding a conclusion.

    With no antecedents and an equality conclusion this is just an
    equation.  An inequality conclusion expresses separation-style
    axioms such as 0 != 1.
    """

    antecedents: tuple[Condition, ...]
    conclusion: Condition


Formula = Equation | ConditionalFormula


def as_formula(f: Formula) -> ConditionalFormula:
    """Normalize an Equation to the degenerate ConditionalFormula."""
    if isinstance(f, Equation):
        return ConditionalFormula((), Condition(f.lhs, f.rhs, EQ))
    if isinstance(f, ConditionalFormula):
        return f
    raise TypeError(f"not a formula: {f!r}")


def formula_terms(f: Formula) -> Iterator[Term]:
    g = as_formula(f)
    for c in (*g.antecedents, g.conclusion):
        yield c.lhs
        yield c.rhs


def formula_free_vars(f: Formula) -> frozenset[str]:
    out: frozenset[str] = frozenset()
    for t in formula_terms(f):
        out |= free_vars(t)
    return out


def formula_signature(f: Formula) -> Signature:
    """The smallest signature admitting every term of the formula."""
    sig = Signature.CR
    for t in formula_terms(f):
        sig = _join(sig, minimal_signature(t))
    return sig


def map_terms(f, fn):
    """Rebuild an Equation or ConditionalFormula with fn applied to every term."""
    if isinstance(f, Equation):
        return Equation(fn(f.lhs), fn(f.rhs))
    if isinstance(f, ConditionalFormula):
        ants = tuple(Condition(fn(c.lhs), fn(c.rhs), c.relation) for c in f.antecedents)
        c = f.conclusion
        return ConditionalFormula(ants, Condition(fn(c.lhs), fn(c.rhs), c.relation))
    raise TypeError(f"not a formula: {f!r}")
