"""Evaluate terms in models and decide whether formulas hold.

Exhaustive checking enumerates every valuation of a finite model in a
canonical order (variables sorted by name, the first one cycling
fastest), so verdicts and witnesses are deterministic.  Sampled
checking first tries all combinations of the model's forced values (up
to a cap) and then seeded random valuations; HOLDS_SAMPLED is evidence,
not proof.  Every FAILS report carries a witness valuation that
re-evaluates to a genuine violation.
"""

from __future__ import annotations

import enum
import itertools
import os
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .axioms import AxiomSuite
from .models import (
    Element,
    Model,
    build_model,
    format_element,
    is_prime,
)
from .terms import (
    EQ,
    ONE,
    ZERO,
    Add,
    Condition,
    ConditionalFormula,
    Equation,
    InvMd,
    InvNimd,
    MeadowError,
    Mul,
    Neg,
    One,
    Signature,
    SignatureError,
    Term,
    Var,
    Zero,
    as_formula,
    formula_free_vars,
    formula_signature,
)
from .translate import to_md

DEFAULT_MAX_EVALS = 10_000_000
MAX_EVALS_ENV = "MEADOW_MAX_EVALS"
DEFAULT_TRIALS = 1000
FORCED_COMBINATION_CAP = 1024

Valuation = Mapping[str, Element]


class NotFiniteError(MeadowError):
    """Exhaustive checking was asked of a model without a finite carrier."""


class EnumerationLimitError(MeadowError):
    """The assignment space exceeds the evaluation cap."""


class UnboundVariableError(MeadowError):
    """A term was evaluated under a valuation missing one of its variables."""


class Verdict(enum.Enum):
    HOLDS_EXHAUSTIVE = "HOLDS_EXHAUSTIVE"
    HOLDS_SAMPLED = "HOLDS_SAMPLED"
    FAILS = "FAILS"


def eval_term(m: Model, t: Term, valuation: Valuation | None = None) -> Element:
    """Evaluate t in m; total, zero inverses included."""
    return _eval(m, t, valuation if valuation is not None else {})


def _eval(m: Model, t: Term, v: Valuation) -> Element:
    match t:
        case Var(name):
            try:
                return v[name]
            except KeyError:
                raise UnboundVariableError(f"no value for variable {name!r}") from None
        case Zero():
            return m.zero
        case One():
            return m.one
        case Add(l, r):
            return m.add(_eval(m, l, v), _eval(m, r, v))
        case Mul(l, r):
            return m.mul(_eval(m, l, v), _eval(m, r, v))
        case Neg(u):
            return m.neg(_eval(m, u, v))
        case InvMd(u):
            if m.inv_md is None:
                raise SignatureError(
                    f"model {m.descriptor} does not interpret the zero-totalized inverse")
            return m.inv_md(_eval(m, u, v))
        case InvNimd(u):
            if m.inv_nimd is None:
                raise SignatureError(
                    f"model {m.descriptor} does not interpret the non-involutive inverse")
            return m.inv_nimd(_eval(m, u, v))
    raise TypeError(f"not a term: {t!r}")


def _satisfied(m: Model, c: Condition, v: Valuation) -> bool:
    equal = _eval(m, c.lhs, v) == _eval(m, c.rhs, v)
    return equal if c.relation == EQ else not equal


def is_violation(m: Model, f: Equation | ConditionalFormula, valuation: Valuation) -> bool:
    """Re-check a witness: all antecedents satisfied, conclusion violated."""
    g = as_formula(f)
    if not all(_satisfied(m, c, valuation) for c in g.antecedents):
        return False
    return not _satisfied(m, g.conclusion, valuation)


@dataclass(frozen=True)
class CheckReport:
    verdict: Verdict
    witness: dict[str, Element] | None
    assignments_tested: int
    seed: int | None = None

    @property
    def holds(self) -> bool:
        return self.verdict is not Verdict.FAILS

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else {
                name: format_element(value)
                for name, value in sorted(self.witness.items())},
            "assignments_tested": self.assignments_tested,
            "seed": self.seed,
        }


def _ordered_vars(f: ConditionalFormula) -> tuple[str, ...]:
    return tuple(sorted(formula_free_vars(f)))


def _valuations(variables: Sequence[str], values: Sequence[Element]) -> Iterator[dict]:
    # Canonical order: the first variable cycles fastest.
    k = len(variables)
    for combo in itertools.product(values, repeat=k):
        yield {variables[i]: combo[k - 1 - i] for i in range(k)}


def _resolve_max_evals(max_evals: int | None) -> int:
    if max_evals is not None:
        return max_evals
    env = os.environ.get(MAX_EVALS_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise MeadowError(f"{MAX_EVALS_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_MAX_EVALS


def holds_exhaustive(m: Model, f: Equation | ConditionalFormula,
                     max_evals: int | None = None) -> CheckReport:
    """Decide f in a finite model by enumerating every valuation.

    The first violating valuation in the canonical order becomes the
    witness.  Enumeration refuses to start when the assignment count
    exceeds the cap (default 10^7, overridable by the max_evals argument
    or the MEADOW_MAX_EVALS environment variable).
    """
    g = as_formula(f)
    if not m.is_finite:
        raise NotFiniteError(f"model {m.descriptor} has no finite carrier")
    variables = _ordered_vars(g)
    cap = _resolve_max_evals(max_evals)
    total = len(m.elements) ** len(variables)
    if total > cap:
        raise EnumerationLimitError(
            f"{total} assignments exceed the cap of {cap}; raise it via "
            f"max_evals or {MAX_EVALS_ENV}")
    tested = 0
    for v in _valuations(variables, m.elements):
        tested += 1
        if is_violation(m, g, v):
            return CheckReport(Verdict.FAILS, v, tested)
    return CheckReport(Verdict.HOLDS_EXHAUSTIVE, None, tested)


def holds_sampled(m: Model, f: Equation | ConditionalFormula,
                  trials: int = DEFAULT_TRIALS, seed: int = 0) -> CheckReport:
    """Test f on the model's forced values plus seeded random valuations.

    Deterministic for a fixed seed, regardless of the model being finite
    or not.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    g = as_formula(f)
    variables = _ordered_vars(g)
    rng = random.Random(seed)
    tested = 0
    forced = itertools.islice(_valuations(variables, m.forced), FORCED_COMBINATION_CAP)
    for v in forced:
        tested += 1
        if is_violation(m, g, v):
            return CheckReport(Verdict.FAILS, v, tested, seed)
    if variables:
        for _ in range(trials):
            v = {name: m.sample(rng) for name in variables}
            tested += 1
            if is_violation(m, g, v):
                return CheckReport(Verdict.FAILS, v, tested, seed)
    return CheckReport(Verdict.HOLDS_SAMPLED, None, tested, seed)


@dataclass(frozen=True)
class SuiteReport:
    suite_id: str
    descriptor: str
    results: tuple[tuple[str, CheckReport], ...]

    @property
    def all_hold(self) -> bool:
        return all(report.holds for _, report in self.results)

    def failures(self) -> tuple[str, ...]:
        return tuple(label for label, report in self.results if not report.holds)

    def report(self, label: str) -> CheckReport:
        for candidate, report in self.results:
            if candidate == label:
                return report
        raise KeyError(f"no axiom labelled {label!r}")

    def to_dict(self) -> dict:
        return {
            "suite": self.suite_id,
            "model": self.descriptor,
            "all_hold": self.all_hold,
            "results": [
                {"label": label, **report.to_dict()}
                for label, report in self.results],
        }


def check_suite(m: Model, suite: AxiomSuite, mode: str = "auto",
                trials: int = DEFAULT_TRIALS, seed: int = 0,
                max_evals: int | None = None) -> SuiteReport:
    """Check every formula of a suite against one model.

    mode "auto" picks exhaustive for finite models and sampled
    otherwise.
    """
    if mode == "auto":
        mode = "exhaustive" if m.is_finite else "sampled"
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    results = []
    for label, f in suite:
        if mode == "exhaustive":
            results.append((label, holds_exhaustive(m, f, max_evals)))
        else:
            results.append((label, holds_sampled(m, f, trials, seed)))
    return SuiteReport(suite.suite_id, m.descriptor, tuple(results))


@dataclass(frozen=True)
class ModelFamily:
    """Which finite models a counterexample search walks, and in what order.

    Singles gf:p:k come first (p ascending, k ascending, or one fixed k),
    then products of two singles, then reto-wrapped zero-totalized
    bases, then invo-wrapped singles.
    """

    p_max: int
    k: int | None = None
    products: bool = False
    reto_n: int | None = None
    invo: bool = False

    def descriptors(self) -> Iterator[str]:
        primes = [p for p in range(2, self.p_max + 1) if is_prime(p)]
        singles = []
        for p in primes:
            ks = range(p) if self.k is None else (self.k,)
            singles.extend(f"gf:{p}:{k}" for k in ks if 0 <= k < p)
        yield from singles
        if self.products:
            for i, d1 in enumerate(singles):
                for d2 in singles[i:]:
                    yield f"prod({d1},{d2})"
        if self.reto_n is not None:
            bases = [f"gf:{p}:0" for p in primes]
            if self.products:
                bases.extend(
                    f"prod(gf:{p}:0,gf:{q}:0)"
                    for i, p in enumerate(primes) for q in primes[i:])
            yield from (f"reto({base},{self.reto_n})" for base in bases)
        if self.invo:
            yield from (f"invo({single})" for single in singles)


@dataclass(frozen=True)
class SearchHit:
    model: Model
    witness: dict[str, Element]

    def to_dict(self) -> dict:
        return {
            "model": self.model.descriptor,
            "witness": {name: format_element(value)
                        for name, value in sorted(self.witness.items())},
        }


def _model_admits(m: Model, f: ConditionalFormula) -> bool:
    sig = formula_signature(f)
    if sig.admits_inv_md and m.inv_md is None:
        return False
    if sig.admits_inv_nimd and m.inv_nimd is None:
        return False
    return True


def find_counterexample(f: Equation | ConditionalFormula, family: ModelFamily,
                        max_evals: int | None = None) -> SearchHit | None:
    """The first model and valuation in the family order violating f.

    Models that do not interpret the formula's inverse symbols are
    skipped.  Returns None when the family is exhausted.
    """
    g = as_formula(f)
    sig = formula_signature(g)
    if sig is Signature.CR:
        sig = Signature.MD
    for descriptor in family.descriptors():
        m = build_model(descriptor, sig)
        if not _model_admits(m, g):
            continue
        report = holds_exhaustive(m, g, max_evals)
        if not report.holds:
            return SearchHit(m, report.witness)
    return None


@dataclass(frozen=True)
class TransferEntry:
    formula: Equation
    holds_in_image: bool
    holds_in_base: bool

    @property
    def consistent(self) -> bool:
        return self.holds_in_image == self.holds_in_base


@dataclass(frozen=True)
class TransferReport:
    descriptor: str
    n: int
    entries: tuple[TransferEntry, ...]

    @property
    def ok(self) -> bool:
        return all(entry.consistent for entry in self.entries)

    def discrepancies(self) -> tuple[TransferEntry, ...]:
        return tuple(entry for entry in self.entries if not entry.consistent)


def transfer_check(a: Model, n: int, corpus: Iterable[Equation],
                   max_evals: int | None = None) -> TransferReport:
    """Compare each equation's truth in the n-totalized reading of a with
    the truth of its translation in a itself.

    a must be finite and over md.  The two sides take independent paths:
    the left evaluates the original equation in retotalize(a, n), the
    right evaluates the rewritten equation in a.
    """
    from .models import retotalize

    image = retotalize(a, n)
    entries = []
    for eq in corpus:
        in_image = holds_exhaustive(image, eq, max_evals).holds
        in_base = holds_exhaustive(a, to_md(eq, n), max_evals).holds
        entries.append(TransferEntry(eq, in_image, in_base))
    return TransferReport(a.descriptor, n, tuple(entries))


def random_term(rng: random.Random, max_depth: int = 4,
                variables: Sequence[str] = ("x", "y"),
                sig: Signature = Signature.NIMD) -> Term:
    """A random term over the given signature, deterministic per rng state."""
    leaves = [ZERO, ONE, *(Var(name) for name in variables)]
    kinds = ["leaf", "add", "mul", "neg"]
    if sig.admits_inv_md:
        kinds.append("inv_md")
    if sig.admits_inv_nimd:
        kinds.append("inv_nimd")

    def go(depth: int) -> Term:
        kind = rng.choice(kinds) if depth > 0 else "leaf"
        if kind == "leaf":
            return rng.choice(leaves)
        if kind == "add":
            return Add(go(depth - 1), go(depth - 1))
        if kind == "mul":
            return Mul(go(depth - 1), go(depth - 1))
        if kind == "neg":
            return Neg(go(depth - 1))
        if kind == "inv_md":
            return InvMd(go(depth - 1))
        return InvNimd(go(depth - 1))

    return go(max_depth)


def random_equation(rng: random.Random, max_depth: int = 4,
                    variables: Sequence[str] = ("x", "y"),
                    sig: Signature = Signature.NIMD) -> Equation:
    return Equation(random_term(rng, max_depth, variables, sig),
                    random_term(rng, max_depth, variables, sig))


def random_corpus(count: int, seed: int = 0, max_depth: int = 4,
                  variables: Sequence[str] = ("x", "y"),
                  sig: Signature = Signature.NIMD) -> list[Equation]:
    """A seeded corpus of random equations for transfer and round-trip tests."""
    rng = random.Random(seed)
    return [random_equation(rng, max_depth, variables, sig) for _ in range(count)]
