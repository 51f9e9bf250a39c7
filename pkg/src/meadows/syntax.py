"""Concrete syntax: tokenizer, parser, and pretty-printer.

Grammar, loosest binding first::

    input     := relation (',' relation)* '==>' relation   conditional formula
               | relation                                  equation / inequation
               | sum                                       bare term
    relation  := sum ('=' | '!=') sum
    sum       := product (('+' | '-') product)*
    product   := factor (('*' | '/') factor)*
    factor    := '-' factor | postfix
    postfix   := atom ('^-1' | '^~' | '^2')*
    atom      := numeral | identifier | '(' sum ')'

Identifiers are ``[a-z][a-z0-9_]*``; numerals are unsigned decimals.
Lexing is whitespace-insensitive.  The abbreviations are expanded while
parsing and never stored: ``p - q`` becomes ``p + (-q)``, ``p / q``
becomes ``p * q^-1`` with the signature's inverse (the zero-totalized
one under a mixed signature), ``p^2`` becomes ``p * p``, and a decimal
numeral n >= 2 becomes the sum of n ones onto zero.  The numerals 0 and
1 denote the constants themselves, which keeps printing and re-parsing
an exact inverse pair.  ``^-1`` is legal under the md and mixed
signatures, ``^~`` under nimd and mixed.

``+`` and ``*`` parse left-associatively.  The printer parenthesizes a
child whenever its operator does not bind strictly tighter than its
parent's, so the printed form encodes the stored tree shape exactly and
``parse(pretty(x), sig) == x`` for every x legal under sig.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import (
    EQ,
    NE,
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
    numeral,
)


class ParseError(MeadowError):
    """A lexical or syntax error; carries the offending text position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


_SIMPLE = {
    "+": "plus",
    "-": "minus",
    "*": "star",
    "/": "slash",
    "(": "lparen",
    ")": "rparen",
    ",": "comma",
}

_WORD_CHARS = set("abcdefghijklmnopqrstuvwxyz0123456789_")


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _SIMPLE:
            out.append(Token(_SIMPLE[c], c, i))
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("num", text[i:j], i))
            i = j
            continue
        if "a" <= c <= "z":
            j = i
            while j < n and text[j] in _WORD_CHARS:
                j += 1
            out.append(Token("ident", text[i:j], i))
            i = j
            continue
        if c == "^":
            for mark, kind in (("^-1", "inv_md"), ("^~", "inv_nimd"), ("^2", "square")):
                if text.startswith(mark, i):
                    out.append(Token(kind, mark, i))
                    i += len(mark)
                    break
            else:
                raise ParseError("expected ^-1, ^~ or ^2 after '^'", i)
            continue
        if c == "=":
            if text.startswith("==>", i):
                out.append(Token("implies", "==>", i))
                i += 3
                continue
            if text.startswith("==", i):
                raise ParseError("unexpected '==' (use '=' or '==>')", i)
            out.append(Token("eq", "=", i))
            i += 1
            continue
        if c == "!":
            if text.startswith("!=", i):
                out.append(Token("ne", "!=", i))
                i += 2
                continue
            raise ParseError("expected '=' after '!'", i)
        raise ParseError(f"unexpected character {c!r}", i)
    return out


class _Parser:
    def __init__(self, tokens: list[Token], sig: Signature, end: int):
        self.tokens = tokens
        self.sig = sig
        self.pos = 0
        self.end = end

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.end)
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {what}", self.end)
        if tok.kind != kind:
            raise ParseError(f"expected {what}, got {tok.text!r}", tok.pos)
        return self.advance()

    def atom(self) -> Term:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.end)
        if tok.kind == "num":
            self.advance()
            value = int(tok.text)
            if value == 0:
                return ZERO
            if value == 1:
                return ONE
            return numeral(value)
        if tok.kind == "ident":
            self.advance()
            return Var(tok.text)
        if tok.kind == "lparen":
            self.advance()
            t = self.sum_()
            self.expect("rparen", "')'")
            return t
        raise ParseError(f"unexpected {tok.text!r}", tok.pos)

    def postfix(self) -> Term:
        t = self.atom()
        while (tok := self.peek()) is not None and tok.kind in ("inv_md", "inv_nimd", "square"):
            self.advance()
            if tok.kind == "inv_md":
                if not self.sig.admits_inv_md:
                    raise SignatureError(
                        f"'^-1' is not admitted by signature {self.sig.value} "
                        f"(at position {tok.pos})")
                t = InvMd(t)
            elif tok.kind == "inv_nimd":
                if not self.sig.admits_inv_nimd:
                    raise SignatureError(
                        f"'^~' is not admitted by signature {self.sig.value} "
                        f"(at position {tok.pos})")
                t = InvNimd(t)
            else:
                t = Mul(t, t)
        return t

    def factor(self) -> Term:
        tok = self.peek()
        if tok is not None and tok.kind == "minus":
            self.advance()
            return Neg(self.factor())
        return self.postfix()

    def _division(self, left: Term, right: Term, pos: int) -> Term:
        if self.sig.admits_inv_nimd and not self.sig.admits_inv_md:
            return Mul(left, InvNimd(right))
        if self.sig.admits_inv_md:
            return Mul(left, InvMd(right))
        raise SignatureError(
            f"'/' needs an inverse symbol; signature {self.sig.value} has none "
            f"(at position {pos})")

    def product(self) -> Term:
        t = self.factor()
        while (tok := self.peek()) is not None and tok.kind in ("star", "slash"):
            self.advance()
            rhs = self.factor()
            t = Mul(t, rhs) if tok.kind == "star" else self._division(t, rhs, tok.pos)
        return t

    def sum_(self) -> Term:
        t = self.product()
        while (tok := self.peek()) is not None and tok.kind in ("plus", "minus"):
            self.advance()
            rhs = self.product()
            t = Add(t, rhs) if tok.kind == "plus" else Add(t, Neg(rhs))
        return t

    def relation_or_term(self) -> Term | Condition:
        t = self.sum_()
        tok = self.peek()
        if tok is not None and tok.kind in ("eq", "ne"):
            self.advance()
            rhs = self.sum_()
            return Condition(t, rhs, EQ if tok.kind == "eq" else NE)
        return t

    def input(self) -> Term | Equation | ConditionalFormula:
        items = [self.relation_or_term()]
        while (tok := self.peek()) is not None and tok.kind == "comma":
            self.advance()
            items.append(self.relation_or_term())
        tok = self.peek()
        if tok is not None and tok.kind == "implies":
            self.advance()
            conclusion = self.relation_or_term()
            if not isinstance(conclusion, Condition):
                raise ParseError("the conclusion of '==>' must be a relation", tok.pos)
            for item in items:
                if not isinstance(item, Condition):
                    raise ParseError("every antecedent of '==>' must be a relation", tok.pos)
            return ConditionalFormula(tuple(items), conclusion)
        if len(items) > 1:
            raise ParseError("',' is only allowed between the antecedents of '==>'", self.end)
        single = items[0]
        if isinstance(single, Condition):
            if single.relation == EQ:
                return Equation(single.lhs, single.rhs)
            return ConditionalFormula((), single)
        return single


def parse(text: str, sig: Signature) -> Term | Equation | ConditionalFormula:
    """Parse a term, an equation, or a conditional formula."""
    tokens = tokenize(text)
    p = _Parser(tokens, sig, len(text))
    result = p.input()
    tok = p.peek()
    if tok is not None:
        raise ParseError(f"unexpected {tok.text!r}", tok.pos)
    return result


def parse_term(text: str, sig: Signature) -> Term:
    result = parse(text, sig)
    if not isinstance(result, Term):
        raise ParseError("expected a term, got a formula", 0)
    return result


def parse_equation(text: str, sig: Signature) -> Equation:
    result = parse(text, sig)
    if not isinstance(result, Equation):
        raise ParseError("expected an equation 'lhs = rhs'", 0)
    return result


def parse_formula(text: str, sig: Signature) -> ConditionalFormula:
    result = parse(text, sig)
    if isinstance(result, Term):
        raise ParseError("expected a formula, got a bare term", 0)
    if isinstance(result, Equation):
        return ConditionalFormula((), Condition(result.lhs, result.rhs, EQ))
    return result


_PREC = {Add: 1, Mul: 2, Neg: 3, InvMd: 4, InvNimd: 4}
_ATOM_PREC = 5


def _prec(t: Term) -> int:
    return _PREC.get(type(t), _ATOM_PREC)


def _wrap(t: Term, parent: int) -> str:
    s = _term_text(t)
    return f"({s})" if _prec(t) <= parent else s


def _term_text(t: Term) -> str:
    match t:
        case Zero():
            return "0"
        case One():
            return "1"
        case Var(name):
            return name
        case Add(l, Neg(u)):
            return f"{_wrap(l, 1)} - {_wrap(u, 1)}"
        case Add(l, r):
            return f"{_wrap(l, 1)} + {_wrap(r, 1)}"
        case Mul(l, r):
            return f"{_wrap(l, 2)} * {_wrap(r, 2)}"
        case Neg(u):
            return f"-{_wrap(u, 3)}"
        case InvMd(u):
            return f"{_wrap(u, 4)}^-1"
        case InvNimd(u):
            return f"{_wrap(u, 4)}^~"
    raise TypeError(f"not a term: {t!r}")


def pretty(obj) -> str:
    """Render a term, equation, condition, or conditional formula as text.

    The output re-parses to exactly the given object (under any
    signature that admits its inverse symbols).
    """
    if isinstance(obj, Term):
        return _term_text(obj)
    if isinstance(obj, Equation):
        return f"{_term_text(obj.lhs)} = {_term_text(obj.rhs)}"
    if isinstance(obj, Condition):
        return f"{_term_text(obj.lhs)} {obj.relation} {_term_text(obj.rhs)}"
    if isinstance(obj, ConditionalFormula):
        if not obj.antecedents:
            return pretty(obj.conclusion)
        ants = ", ".join(pretty(c) for c in obj.antecedents)
        return f"{ants} ==> {pretty(obj.conclusion)}"
    raise TypeError(f"cannot print {obj!r}")
