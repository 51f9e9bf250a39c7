"""Concrete total algebras: totalized rational and prime fields, their
products, and the constructions that swap one inverse operator for the
other.

Elements are plain data: exact rationals are fractions.Fraction values
(always in lowest terms with a positive denominator), prime-field
elements are ints in range(p), product elements are pairs.  The
operations live on the Model record as closures, so products and the
inverse-swapping constructions compose without new element types.

Models are immutable after construction and evaluation is pure, so they
are safe to share across threads and to enumerate in parallel.
"""

from __future__ import annotations

import operator
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Union

from .terms import MeadowError, Signature

Element = Union[int, Fraction, tuple]

RATIONAL_SAMPLE_BOUND = 100


class ModelError(MeadowError):
    """A model cannot be constructed as requested."""


class DescriptorError(MeadowError):
    """A model descriptor string does not parse."""


class PreconditionError(MeadowError):
    """A model fails the axioms a construction requires of it."""


def format_element(e: Element) -> str:
    """Render an element: rationals as p/q, residues as integers, pairs nested."""
    if isinstance(e, tuple):
        return "(" + ", ".join(format_element(c) for c in e) + ")"
    return str(e)


def _dedup(values) -> tuple:
    out = []
    for v in values:
        if v not in out:
            out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class Model:
    """A total algebra interpreting the term language.

    All operations are total on the carrier.  Finite models list the
    carrier in ``elements``; every model also has ``sample`` so that
    sampled checking works uniformly.  ``forced`` holds the values a
    sampled check must always try: the degenerate spots live at 0, 1,
    -1 and at the inverse of zero.
    """

    descriptor: str
    signature: Signature
    zero: Element
    one: Element
    add: Callable[[Element, Element], Element]
    mul: Callable[[Element, Element], Element]
    neg: Callable[[Element], Element]
    inv_md: Callable[[Element], Element] | None
    inv_nimd: Callable[[Element], Element] | None
    elements: tuple[Element, ...] | None
    sample: Callable[[random.Random], Element]
    forced: tuple[Element, ...]
    parse_element: Callable[[str], Element]

    @property
    def is_finite(self) -> bool:
        return self.elements is not None

    def __repr__(self) -> str:
        return f"Model({self.descriptor})"


def rational_totalized(sig: Signature, n: int = 0,
                       sample_bound: int = RATIONAL_SAMPLE_BOUND) -> Model:
    """The field of rational numbers with the inverse made total.

    Nonzero q maps to 1/q under both inverse operators.  Zero maps to 0
    under the zero-totalized operator ^-1 and to n under the
    non-involutive operator ^~; under a mixed signature both are
    present.  Arithmetic is exact.  Sampling draws numerator and
    denominator uniformly from [-sample_bound, sample_bound] (nonzero
    denominators).
    """
    if sig not in (Signature.MD, Signature.NIMD, Signature.MIXED):
        raise ModelError("a rational model needs an inverse symbol: use md, nimd or mixed")
    if n < 0:
        raise ModelError(f"totalization value must be a natural number, got {n}")
    if sample_bound < 1:
        raise ModelError(f"sample bound must be positive, got {sample_bound}")

    zero = Fraction(0)

    def inv_zero_totalized(x: Fraction) -> Fraction:
        return zero if x == 0 else 1 / x

    def inv_n_totalized(x: Fraction) -> Fraction:
        return Fraction(n) if x == 0 else 1 / x

    def sample(rng: random.Random) -> Fraction:
        num = rng.randint(-sample_bound, sample_bound)
        den = 0
        while den == 0:
            den = rng.randint(-sample_bound, sample_bound)
        return Fraction(num, den)

    def parse_elem(text: str) -> Fraction:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise DescriptorError(f"not a rational literal: {text!r}") from exc

    return Model(
        descriptor=f"rat:{n}",
        signature=sig,
        zero=zero,
        one=Fraction(1),
        add=operator.add,
        mul=operator.mul,
        neg=operator.neg,
        inv_md=inv_zero_totalized if sig.admits_inv_md else None,
        inv_nimd=inv_n_totalized if sig.admits_inv_nimd else None,
        elements=None,
        sample=sample,
        forced=_dedup((zero, Fraction(1), Fraction(-1), Fraction(n))),
        parse_element=parse_elem,
    )


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def gf_totalized(p: int, k: int, sig: Signature) -> Model:
    """The prime field Z/pZ with the inverse totalized so zero maps to k.

    Under md or nimd the single inverse symbol gets the k-totalized
    operation; under mixed the zero-totalized symbol keeps 0 -> 0 while
    the non-involutive one gets 0 -> k, matching the rational
    convention.  Nonzero inverses are x^(p-2) mod p.
    """
    if not is_prime(p):
        raise ModelError(f"modulus must be prime, got {p}")
    if not 0 <= k < p:
        raise ModelError(f"totalization value must satisfy 0 <= k < {p}, got {k}")
    if sig not in (Signature.MD, Signature.NIMD, Signature.MIXED):
        raise ModelError("a prime-field model needs an inverse symbol: use md, nimd or mixed")

    def inv_k(x: int) -> int:
        return k if x == 0 else pow(x, p - 2, p)

    def inv_zero(x: int) -> int:
        return 0 if x == 0 else pow(x, p - 2, p)

    if sig is Signature.MIXED:
        inv_md_op, inv_nimd_op = inv_zero, inv_k
    elif sig is Signature.MD:
        inv_md_op, inv_nimd_op = inv_k, None
    else:
        inv_md_op, inv_nimd_op = None, inv_k

    def parse_elem(text: str) -> int:
        try:
            return int(text) % p
        except ValueError as exc:
            raise DescriptorError(f"not a residue literal: {text!r}") from exc

    return Model(
        descriptor=f"gf:{p}:{k}",
        signature=sig,
        zero=0,
        one=1 % p,
        add=lambda a, b: (a + b) % p,
        mul=lambda a, b: (a * b) % p,
        neg=lambda a: (-a) % p,
        inv_md=inv_md_op,
        inv_nimd=inv_nimd_op,
        elements=tuple(range(p)),
        sample=lambda rng: rng.randrange(p),
        forced=_dedup((0, 1 % p, (p - 1) % p, k)),
        parse_element=parse_elem,
    )


def _split_pair(body: str, original: str) -> tuple[str, str]:
    depth = 0
    for i, c in enumerate(body):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == "," and depth == 0:
            return body[:i], body[i + 1:]
    raise DescriptorError(f"missing top-level comma in pair: {original!r}")


def product(a: Model, b: Model) -> Model:
    """The componentwise product; elements are pairs.

    Both factors must share one signature.  The product is finite
    exactly when both factors are.
    """
    if a.signature != b.signature:
        raise ModelError(
            f"signature mismatch: {a.descriptor} is over {a.signature.value}, "
            f"{b.descriptor} over {b.signature.value}")

    def lift2(f: Callable, g: Callable) -> Callable:
        return lambda x, y: (f(x[0], y[0]), g(x[1], y[1]))

    def lift1(f: Callable, g: Callable) -> Callable:
        return lambda x: (f(x[0]), g(x[1]))

    elements = None
    if a.is_finite and b.is_finite:
        elements = tuple((x, y) for x in a.elements for y in b.elements)

    def parse_elem(text: str) -> tuple:
        inner = text.strip()
        if not (inner.startswith("(") and inner.endswith(")")):
            raise DescriptorError(f"a product element looks like (left, right), got {text!r}")
        left, right = _split_pair(inner[1:-1], text)
        return (a.parse_element(left.strip()), b.parse_element(right.strip()))

    return Model(
        descriptor=f"prod({a.descriptor},{b.descriptor})",
        signature=a.signature,
        zero=(a.zero, b.zero),
        one=(a.one, b.one),
        add=lift2(a.add, b.add),
        mul=lift2(a.mul, b.mul),
        neg=lift1(a.neg, b.neg),
        inv_md=lift1(a.inv_md, b.inv_md) if a.inv_md and b.inv_md else None,
        inv_nimd=lift1(a.inv_nimd, b.inv_nimd) if a.inv_nimd and b.inv_nimd else None,
        elements=elements,
        sample=lambda rng: (a.sample(rng), b.sample(rng)),
        forced=_dedup((x, y) for x in a.forced for y in b.forced),
        parse_element=parse_elem,
    )


def numeral_value(m: Model, n: int) -> Element:
    """The value of the numeral for n in m: the n-fold sum of one onto zero."""
    v = m.zero
    for _ in range(n):
        v = m.add(v, m.one)
    return v


def is_invertible(m: Model, e: Element) -> bool:
    """True when e times its totalized inverse equals one in m."""
    inv = m.inv_md or m.inv_nimd
    if inv is None:
        raise ModelError(f"model {m.descriptor} has no inverse operation")
    return m.mul(e, inv(e)) == m.one


def _tabulate(m: Model, f: Callable) -> Callable:
    table = {x: f(x) for x in m.elements}
    return table.__getitem__


def mixed_expansion(a: Model, n: int, *, check: bool = False) -> Model:
    """Extend a zero-totalized model with the n-totalized inverse.

    The new operator is computed pointwise in a as
    x^~ = x^-1 + n * (1 - x * x^-1), so nonzero x keeps its inverse and
    zero maps to the value of the numeral for n.  Finite carriers get a
    materialized inverse table; sampleable carriers close over the base
    operations.  With check=True, a is first verified against the md
    suite (exhaustively when finite, sampled otherwise).
    """
    if a.signature is not Signature.MD or a.inv_md is None:
        raise ModelError(
            f"can only expand a model over md, got {a.descriptor} over {a.signature.value}")
    if n < 1:
        raise ModelError(f"totalization value must be positive, got {n}")
    if check:
        _require_suite(a, "md")

    nv = numeral_value(a, n)

    def defining(x: Element) -> Element:
        i = a.inv_md(x)
        defect = a.add(a.one, a.neg(a.mul(x, i)))
        return a.add(i, a.mul(nv, defect))

    return replace(
        a,
        descriptor=f"mix({a.descriptor},{n})",
        signature=Signature.MIXED,
        inv_nimd=_tabulate(a, defining) if a.is_finite else defining,
        forced=_dedup(a.forced + (nv,)),
    )


def retotalize(a: Model, n: int, *, check: bool = False) -> Model:
    """Move a zero-totalized model to its n-totalized reading.

    Same carrier; the non-involutive inverse is defined pointwise by
    x^~ = x^-1 + n * (1 - x * x^-1) and the zero-totalized symbol is
    dropped.
    """
    expanded = mixed_expansion(a, n, check=check)
    return replace(
        expanded,
        descriptor=f"reto({a.descriptor},{n})",
        signature=Signature.NIMD,
        inv_md=None,
    )


def involutize(b: Model, *, check: bool = False) -> Model:
    """Recover the zero-totalized reading of an n-totalized model.

    The zero-totalized inverse is defined pointwise by
    x^-1 = x * (x^~ * x^~); the non-involutive symbol is dropped.  With
    check=True, b is first verified against the nimd suite.
    """
    if b.signature is not Signature.NIMD or b.inv_nimd is None:
        raise ModelError(
            f"can only involutize a model over nimd, got {b.descriptor} "
            f"over {b.signature.value}")
    if check:
        _require_suite(b, "nimd")

    def defining(x: Element) -> Element:
        i = b.inv_nimd(x)
        return b.mul(x, b.mul(i, i))

    return replace(
        b,
        descriptor=f"invo({b.descriptor})",
        signature=Signature.MD,
        inv_md=_tabulate(b, defining) if b.is_finite else defining,
        inv_nimd=None,
    )


def _require_suite(m: Model, which: str) -> None:
    # Imported here: checker and axioms sit above models in the layering.
    from .axioms import suite_md, suite_nimd
    from .checker import check_suite

    suite = suite_md() if which == "md" else suite_nimd()
    report = check_suite(m, suite)
    if not report.all_hold:
        raise PreconditionError(
            f"{m.descriptor} does not satisfy suite {suite.suite_id}: "
            + ", ".join(report.failures()))


def same_operation_tables(a: Model, b: Model) -> bool:
    """Exact equality of carriers and operation tables of two finite models."""
    if not (a.is_finite and b.is_finite):
        raise ModelError("operation tables exist only for finite models")
    if a.signature != b.signature:
        return False
    if len(a.elements) != len(b.elements) or set(a.elements) != set(b.elements):
        return False
    if a.zero != b.zero or a.one != b.one:
        return False
    for op_a, op_b in ((a.neg, b.neg), (a.inv_md, b.inv_md), (a.inv_nimd, b.inv_nimd)):
        if (op_a is None) != (op_b is None):
            return False
        if op_a is not None and any(op_a(x) != op_b(x) for x in a.elements):
            return False
    for x in a.elements:
        for y in a.elements:
            if a.add(x, y) != b.add(x, y) or a.mul(x, y) != b.mul(x, y):
                return False
    return True


def build_model(descriptor: str, sig: Signature) -> Model:
    """Build the model a descriptor names, read over the given signature.

    Grammar::

        desc := rat:<n> | gf:<p>:<k> | prod(<desc>,<desc>)
              | reto(<desc>,<n>) | invo(<desc>) | mix(<desc>,<n>)

    rat and gf adapt to the requested signature; reto always yields a
    nimd model (its base is built over md), invo an md model (base over
    nimd), and mix a mixed model.  A CR request is read over md, whose
    unused inverse is harmless.
    """
    if sig is Signature.CR:
        sig = Signature.MD
    model, rest = _parse_descriptor(descriptor.strip(), sig)
    if rest:
        raise DescriptorError(f"trailing text in descriptor: {rest!r}")
    return model


def _read_int(text: str, original: str) -> tuple[int, str]:
    i = 0
    while i < len(text) and text[i].isdigit():
        i += 1
    if i == 0:
        raise DescriptorError(f"expected a number in descriptor {original!r}")
    return int(text[:i]), text[i:]


def _expect(text: str, ch: str, original: str) -> str:
    if not text.startswith(ch):
        raise DescriptorError(f"expected {ch!r} in descriptor {original!r}")
    return text[len(ch):]


def _parse_descriptor(text: str, sig: Signature) -> tuple[Model, str]:
    if text.startswith("rat:"):
        n, rest = _read_int(text[4:], text)
        return rational_totalized(sig, n), rest
    if text.startswith("gf:"):
        p, rest = _read_int(text[3:], text)
        rest = _expect(rest, ":", text)
        k, rest = _read_int(rest, text)
        return gf_totalized(p, k, sig), rest
    if text.startswith("prod("):
        a, rest = _parse_descriptor(text[5:], sig)
        rest = _expect(rest, ",", text)
        b, rest = _parse_descriptor(rest, sig)
        rest = _expect(rest, ")", text)
        return product(a, b), rest
    if text.startswith("reto("):
        base, rest = _parse_descriptor(text[5:], Signature.MD)
        rest = _expect(rest, ",", text)
        n, rest = _read_int(rest, text)
        rest = _expect(rest, ")", text)
        return retotalize(base, n), rest
    if text.startswith("invo("):
        base, rest = _parse_descriptor(text[5:], Signature.NIMD)
        rest = _expect(rest, ")", text)
        return involutize(base), rest
    if text.startswith("mix("):
        base, rest = _parse_descriptor(text[4:], Signature.MD)
        rest = _expect(rest, ",", text)
        n, rest = _read_int(rest, text)
        rest = _expect(rest, ")", text)
        return mixed_expansion(base, n), rest
    raise DescriptorError(f"unknown model descriptor: {text!r}")
