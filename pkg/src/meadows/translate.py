"""Syntactic translations between the two inverse signatures.

Each inverse operator can be rewritten into the other, bottom-up, using
the equation that defines one in terms of the other.  The maps are
plain homomorphic tree rewrites with no simplification, so translated
terms grow; whether a translation round-trips is a semantic question,
answered model-side by the checker.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import (
    ONE,
    Add,
    Equation,
    InvMd,
    InvNimd,
    Mul,
    Neg,
    SignatureError,
    Term,
    map_terms,
    numeral,
)

NIMD_TO_MD = "nimd->md"
MD_TO_NIMD = "md->nimd"


def to_md(obj: Term | Equation, n: int = 1) -> Term | Equation:
    """Rewrite every u^~ into u^-1 + numeral(n) * (1 - u * u^-1).

    For n = 1 the numeral factor is the constant one and is dropped, so
    u^~ becomes u^-1 + (1 - u * u^-1).  All other nodes are copied.
    Accepts a term or an equation (translated side by side); the input
    must not contain ^-1 already.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if isinstance(obj, Equation):
        return map_terms(obj, lambda t: _term_to_md(t, n))
    return _term_to_md(obj, n)


def _term_to_md(t: Term, n: int) -> Term:
    match t:
        case InvNimd(u):
            v = _term_to_md(u, n)
            inv = InvMd(v)
            defect = Add(ONE, Neg(Mul(v, inv)))
            if n == 1:
                return Add(inv, defect)
            return Add(inv, Mul(numeral(n), defect))
        case InvMd(_):
            raise SignatureError("the input of to_md must not contain '^-1'")
        case Add(l, r):
            return Add(_term_to_md(l, n), _term_to_md(r, n))
        case Mul(l, r):
            return Mul(_term_to_md(l, n), _term_to_md(r, n))
        case Neg(u):
            return Neg(_term_to_md(u, n))
        case _:
            return t


def to_nimd(obj: Term | Equation) -> Term | Equation:
    """Rewrite every u^-1 into u * (u^~ * u^~); all other nodes are copied.

    The input must not contain ^~ already.
    """
    if isinstance(obj, Equation):
        return map_terms(obj, _term_to_nimd)
    return _term_to_nimd(obj)


def _term_to_nimd(t: Term) -> Term:
    match t:
        case InvMd(u):
            v = _term_to_nimd(u)
            inv = InvNimd(v)
            return Mul(v, Mul(inv, inv))
        case InvNimd(_):
            raise SignatureError("the input of to_nimd must not contain '^~'")
        case Add(l, r):
            return Add(_term_to_nimd(l), _term_to_nimd(r))
        case Mul(l, r):
            return Mul(_term_to_nimd(l), _term_to_nimd(r))
        case Neg(u):
            return Neg(_term_to_nimd(u))
        case _:
            return t


@dataclass(frozen=True)
class TranslationSpec:
    """A direction plus totalization value, applicable to terms and equations."""

    direction: str
    n: int = 1

    def __post_init__(self) -> None:
        if self.direction not in (NIMD_TO_MD, MD_TO_NIMD):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")

    def apply(self, obj: Term | Equation) -> Term | Equation:
        if self.direction == NIMD_TO_MD:
            return to_md(obj, self.n)
        return to_nimd(obj)
