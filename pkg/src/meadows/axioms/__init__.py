"""The axiom suites, shipped as data.

Each suite lives in a .eqn file next to this module: one labelled
formula per line in the form ``label: formula``, with ``#`` starting a
comment.  Files are parsed with the package grammar on first use, so
loading the suites exercises the parser on the whole corpus.

Suite contents:

* ``cr``          eight commutative-ring axioms, labels CR1..CR8
* ``md``          cr plus Ref (2.1) and Ril (2.2) for the ^-1 inverse
* ``nimd1``       cr plus (3.1)..(3.4) for the one-totalized ^~ inverse
* ``nimd``        cr plus (5.1)..(5.4), totalization of zero left open
* ``nimd:n``      nimd plus the axiom 0^~ = numeral(n)
* ``derived-*``   equations derivable from the matching suite
* ``guarded``     the conditional formulas (4.1)..(4.6) relating the two
                  inverses, plus Sep, Canc, Gil and its ^~ variant Gil'
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources

from ..syntax import parse, parse_equation
from ..terms import (
    ZERO,
    ConditionalFormula,
    Equation,
    InvNimd,
    Signature,
    Term,
    as_formula,
    check_legal,
    formula_terms,
    map_terms,
    numeral,
    subst,
)


@dataclass(frozen=True)
class AxiomSuite:
    """An ordered, uniquely labelled list of formulas over one signature."""

    suite_id: str
    signature: Signature
    formulas: tuple[tuple[str, ConditionalFormula], ...]

    def __post_init__(self) -> None:
        labels = [label for label, _ in self.formulas]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in suite {self.suite_id!r}")
        for _, f in self.formulas:
            for t in formula_terms(f):
                check_legal(t, self.signature)

    def __len__(self) -> int:
        return len(self.formulas)

    def __iter__(self):
        return iter(self.formulas)

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.formulas)

    def formula(self, label: str) -> ConditionalFormula:
        for candidate, f in self.formulas:
            if candidate == label:
                return f
        raise KeyError(f"no formula labelled {label!r} in suite {self.suite_id!r}")


def _read_entries(filename: str) -> tuple[tuple[str, str], ...]:
    text = resources.files(__package__).joinpath(filename).read_text(encoding="utf-8")
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        label, sep, source = line.partition(":")
        if not sep or not source.strip():
            raise ValueError(f"{filename}:{lineno}: expected 'label: formula'")
        entries.append((label.strip(), source.strip()))
    return tuple(entries)


@functools.lru_cache(maxsize=None)
def _load(filename: str, sig: Signature) -> tuple[tuple[str, ConditionalFormula], ...]:
    out = []
    for label, source in _read_entries(filename):
        parsed = parse(source, sig)
        if isinstance(parsed, Term):
            raise ValueError(f"{filename}: {label!r} is a bare term, not a formula")
        out.append((label, as_formula(parsed)))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def suite_cr() -> AxiomSuite:
    """The eight commutative-ring axioms."""
    return AxiomSuite("cr", Signature.CR, _load("cr.eqn", Signature.CR))


@functools.lru_cache(maxsize=None)
def suite_md() -> AxiomSuite:
    """Ring axioms plus Ref and Ril: the zero-totalized inverse."""
    return AxiomSuite(
        "md", Signature.MD,
        _load("cr.eqn", Signature.MD) + _load("inv_md.eqn", Signature.MD))


@functools.lru_cache(maxsize=None)
def suite_nimd1() -> AxiomSuite:
    """Ring axioms plus (3.1)..(3.4): the one-totalized inverse."""
    return AxiomSuite(
        "nimd1", Signature.NIMD,
        _load("cr.eqn", Signature.NIMD) + _load("inv_nimd1.eqn", Signature.NIMD))


@functools.lru_cache(maxsize=None)
def suite_nimd() -> AxiomSuite:
    """Ring axioms plus (5.1)..(5.4); what zero's inverse is stays open."""
    return AxiomSuite(
        "nimd", Signature.NIMD,
        _load("cr.eqn", Signature.NIMD) + _load("inv_nimd.eqn", Signature.NIMD))


@functools.lru_cache(maxsize=None)
def suite_nimd_n(n: int) -> AxiomSuite:
    """The nimd suite plus the axiom 0^~ = numeral(n)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    base = as_formula(Equation(InvNimd(ZERO), numeral(n)))
    return AxiomSuite(f"nimd:{n}", Signature.NIMD,
                      suite_nimd().formulas + (("base", base),))


@functools.lru_cache(maxsize=None)
def derived_md() -> AxiomSuite:
    return AxiomSuite("derived-md", Signature.MD,
                      _load("derived_md.eqn", Signature.MD))


@functools.lru_cache(maxsize=None)
def derived_nimd1() -> AxiomSuite:
    return AxiomSuite("derived-nimd1", Signature.NIMD,
                      _load("derived_nimd1.eqn", Signature.NIMD))


@functools.lru_cache(maxsize=None)
def derived_nimd_n(n: int) -> AxiomSuite:
    """The derived nimd equations with the numeral for n spliced in."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    binding = {"n": numeral(n)}
    formulas = tuple(
        (label, map_terms(f, lambda t: subst(t, binding)))
        for label, f in _load("derived_nimd_n.eqn", Signature.NIMD))
    return AxiomSuite(f"derived-nimd:{n}", Signature.NIMD, formulas)


@functools.lru_cache(maxsize=None)
def guarded_formulas() -> AxiomSuite:
    """Conditional formulas mixing both inverses, plus Sep, Canc, Gil, Gil'."""
    return AxiomSuite("guarded", Signature.MIXED,
                      _load("guarded.eqn", Signature.MIXED))


def extra_initiality_axiom(sig: Signature) -> Equation:
    """The equation (1 + x^2 + y^2) * (1 + x^2 + y^2)^inv = 1.

    It holds in the totalized rational fields, where 1 + x^2 + y^2 is
    never zero, but not in every totalized prime field.
    """
    if sig is Signature.MD:
        return parse_equation("(1 + x^2 + y^2) * (1 + x^2 + y^2)^-1 = 1", sig)
    if sig is Signature.NIMD:
        return parse_equation("(1 + x^2 + y^2) * (1 + x^2 + y^2)^~ = 1", sig)
    raise ValueError("the axiom is stated for the md and nimd signatures")


def suite_by_id(suite_id: str) -> AxiomSuite:
    """Resolve a CLI-style suite id.

    Known ids: cr, md, nimd1, nimd, nimd:N, derived-md, derived-nimd1,
    derived-nimd:N, guarded.
    """
    fixed = {
        "cr": suite_cr,
        "md": suite_md,
        "nimd1": suite_nimd1,
        "nimd": suite_nimd,
        "derived-md": derived_md,
        "derived-nimd1": derived_nimd1,
        "guarded": guarded_formulas,
    }
    if suite_id in fixed:
        return fixed[suite_id]()
    for prefix, factory in (("nimd:", suite_nimd_n), ("derived-nimd:", derived_nimd_n)):
        if suite_id.startswith(prefix):
            digits = suite_id[len(prefix):]
            if not digits.isdigit():
                raise ValueError(f"bad suite id {suite_id!r}: expected {prefix}N")
            return factory(int(digits))
    raise ValueError(f"unknown suite id {suite_id!r}")
