"""Text grammar for algebra elements, bimodule vectors and module classes.

    element = [ "-" ] term { ("+"|"-") term }
    term    = [ scalar "*" ] atom
    atom    = "a(" int "," int ")" | "d(" int "," int "," int ")"
            | "eps(" int ")" | "s(" int "," int ")"
    scalar  = gaussian [ "*" phase ] | phase
    gaussian= rational [ "i" ] | "i" | "(" rational ("+"|"-") [ rational ] "i" ")"
    phase   = "e{" exps "}"
    exps    = "0" | [ "-" ] exp { ("+"|"-") exp }
    exp     = [ rational [ "*" ] ] sym
    sym     = "L" | "T" | "A" digits
    class   = "T(" exps ";" int "," int ")"

Tensors of algebra elements are written ``x (x) y`` and may be summed with
``+``.  ``parse(format(v)) == v`` for every value these functions emit.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from .algebra import AlgebraElement
from .bimodules import DeltaVector, EpsilonVector, SVector
from .errors import ParseError
from .modules import ModuleClass
from .scalars import GaussianRational, PhaseExponent, SymScalar

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+)|(?P<name>[A-Za-z]+\d*)|(?P<tensor>\(x\))|(?P<punct>[(){}+\-*/,;])"
)

_ATOM_ARITY = {"a": 2, "d": 3, "eps": 1, "s": 2}
_ATOM_CLASS = {"a": AlgebraElement, "d": DeltaVector, "eps": EpsilonVector, "s": SVector}


class _Token(NamedTuple):
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            toks.append(_Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(_Token("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def take(self) -> _Token:
        tok = self.toks[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.peek().text == text and self.peek().kind != "eof":
            self.take()
            return True
        return False

    def expect(self, text: str, expected: tuple[str, ...] = ()) -> _Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "eof":
            raise ParseError(f"expected {text!r}", tok.pos, expected or (text,))
        return self.take()

    def fail(self, message: str, expected: tuple[str, ...] = ()):
        raise ParseError(message, self.peek().pos, expected)

    def at_end(self) -> bool:
        return self.peek().kind == "eof"

    def done(self) -> None:
        if not self.at_end():
            self.fail(f"trailing input {self.peek().text!r}")

    # -- terminals -------------------------------------------------------

    def integer(self) -> int:
        sign = -1 if self.accept("-") else 1
        tok = self.peek()
        if tok.kind != "num":
            self.fail("expected integer", ("int",))
        self.take()
        return sign * int(tok.text)

    def rational(self, signed: bool = True) -> Fraction:
        sign = -1 if (signed and self.accept("-")) else 1
        tok = self.peek()
        if tok.kind != "num":
            self.fail("expected number", ("rational",))
        self.take()
        num = int(tok.text)
        if self.peek().text == "/" and self.peek(1).kind == "num":
            self.take()
            den = int(self.take().text)
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    # -- phases and scalars ------------------------------------------------

    def exponent_sum(self) -> PhaseExponent:
        if self.peek().kind == "num" and self.peek().text == "0" and \
                self.peek(1).text in ("}", ";"):
            self.take()
            return PhaseExponent()
        total = PhaseExponent()
        negative = self.accept("-")
        while True:
            total = total + self._exponent_term(negative)
            if self.accept("+"):
                negative = False
            elif self.accept("-"):
                negative = True
            else:
                return total

    def _exponent_term(self, negative: bool) -> PhaseExponent:
        coeff = Fraction(1)
        if self.peek().kind == "num":
            coeff = self.rational(signed=False)
            self.accept("*")
        if negative:
            coeff = -coeff
        tok = self.peek()
        if tok.kind != "name":
            self.fail("expected phase symbol", ("L", "T", "A<k>"))
        self.take()
        if tok.text == "L":
            return PhaseExponent.of_lam(coeff)
        if tok.text == "T":
            return PhaseExponent.of_tau(coeff)
        if re.fullmatch(r"A\d+", tok.text):
            return PhaseExponent.of_alpha(int(tok.text[1:]), coeff)
        raise ParseError(f"unknown phase symbol {tok.text!r}", tok.pos, ("L", "T", "A<k>"))

    def phase(self) -> PhaseExponent:
        self.expect("e")
        self.expect("{")
        exp = self.exponent_sum()
        self.expect("}")
        return exp

    def _at_phase(self) -> bool:
        return self.peek().text == "e" and self.peek(1).text == "{"

    def gaussian(self, negative: bool = False) -> GaussianRational:
        tok = self.peek()
        if tok.text == "(":
            self.take()
            re_part = self.rational()
            if self.accept("+"):
                im_sign = 1
            elif self.accept("-"):
                im_sign = -1
            else:
                self.fail("expected '+' or '-' in complex literal", ("+", "-"))
            im_part = Fraction(1)
            if self.peek().kind == "num":
                im_part = self.rational(signed=False)
            itok = self.peek()
            if itok.text != "i":
                self.fail("expected 'i'", ("i",))
            self.take()
            self.expect(")")
            value = GaussianRational(re_part, im_sign * im_part)
        elif tok.text == "i":
            self.take()
            value = GaussianRational(Fraction(0), Fraction(1))
        else:
            mag = self.rational(signed=False)
            if self.peek().text == "i":
                self.take()
                value = GaussianRational(Fraction(0), mag)
            else:
                value = GaussianRational(mag, Fraction(0))
        return -value if negative else value

    def scalar(self, negative: bool = False) -> SymScalar:
        if self._at_phase():
            exp = self.phase()
            coeff = GaussianRational(Fraction(-1 if negative else 1), Fraction(0))
            return SymScalar({exp: coeff})
        g = self.gaussian(negative)
        exp = PhaseExponent()
        if self.peek().text == "*" and self.peek(1).text == "e" and self.peek(2).text == "{":
            self.take()
            exp = self.phase()
        return SymScalar({exp: g})

    # -- elements ------------------------------------------------------------

    def _at_atom(self) -> bool:
        return self.peek().kind == "name" and self.peek().text in _ATOM_ARITY \
            and self.peek(1).text == "("

    def atom(self) -> tuple[str, tuple[int, ...]]:
        tok = self.take()
        arity = _ATOM_ARITY[tok.text]
        self.expect("(")
        indices = [self.integer()]
        for _ in range(arity - 1):
            self.expect(",")
            indices.append(self.integer())
        self.expect(")")
        return tok.text, tuple(indices)

    def term(self) -> tuple[str, tuple[int, ...], SymScalar]:
        negative = False
        if self._at_atom():
            kind, key = self.atom()
            return kind, key, SymScalar.one()
        coeff = self.scalar(negative)
        self.expect("*")
        if not self._at_atom():
            self.fail("expected basis element", tuple(_ATOM_ARITY))
        kind, key = self.atom()
        return kind, key, coeff

    def element(self):
        if self.peek().kind == "num" and self.peek().text == "0" and self.peek(1).kind == "eof":
            self.take()
            return AlgebraElement.zero()
        negative = self.accept("-")
        kind, key, coeff = self.term()
        if negative:
            coeff = -coeff
        terms = {self._normalize_key(kind, key): coeff}
        while True:
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
            kind2, key2, coeff2 = self.term()
            if kind2 != kind:
                self.fail(f"mixed basis kinds {kind!r} and {kind2!r}")
            norm = self._normalize_key(kind2, key2)
            cur = terms.get(norm, SymScalar.zero())
            terms[norm] = cur + (coeff2 if sign > 0 else -coeff2)
        return _ATOM_CLASS[kind](terms)

    @staticmethod
    def _normalize_key(kind: str, key: tuple[int, ...]):
        return key[0] if kind == "eps" else key

    def module_class(self) -> ModuleClass:
        self.expect("T")
        self.expect("(")
        alpha = self.exponent_sum()
        self.expect(";")
        p = self.integer()
        self.expect(",")
        q = self.integer()
        self.expect(")")
        return ModuleClass(alpha, p, q)


def parse_element(text: str):
    """Parse an element, bimodule vector or module class from text."""
    p = _Parser(text)
    if p.peek().text == "T" and p.peek(1).text == "(":
        out = p.module_class()
    else:
        out = p.element()
    p.done()
    return out


def parse_tensor(text: str) -> list[tuple[AlgebraElement, AlgebraElement]]:
    """Parse a sum of pure tensors ``x (x) y + ...`` of algebra elements."""
    p = _Parser(text)
    pairs = []
    while True:
        left = p.element()
        p.expect("(x)")
        right = p.element()
        if not isinstance(left, AlgebraElement) or not isinstance(right, AlgebraElement):
            p.fail("tensor factors must be algebra elements")
        pairs.append((left, right))
        if not p.accept("+"):
            break
    p.done()
    return pairs


def parse_any(text: str):
    """('class', c) | ('tensor', pairs) | ('element', v) with full consumption."""
    probe = _Parser(text)
    if probe.peek().text == "T" and probe.peek(1).text == "(":
        return ("class", parse_element(text))
    try:
        probe.element()
        is_tensor = probe.peek().text == "(x)"
    except ParseError:
        is_tensor = False
    if is_tensor:
        return ("tensor", parse_tensor(text))
    return ("element", parse_element(text))


def parse_scalar(text: str) -> SymScalar:
    """Parse a bare scalar (gaussian and/or phase), e.g. for numeric output."""
    p = _Parser(text)
    negative = p.accept("-")
    out = p.scalar(negative)
    p.done()
    return out


# -- formatting ---------------------------------------------------------------


def _rat_str(f: Fraction) -> str:
    return str(f)


def format_phase(exp: PhaseExponent) -> str:
    parts: list[tuple[Fraction, str]] = []
    if exp.lam:
        parts.append((exp.lam, "L"))
    if exp.tau:
        parts.append((exp.tau, "T"))
    for k, v in exp.alphas:
        parts.append((v, f"A{k}"))
    if not parts:
        return "e{ 0 }"
    pieces = [f"{_rat_str(parts[0][0])} {parts[0][1]}"]
    for coeff, sym in parts[1:]:
        sign = " + " if coeff > 0 else " - "
        pieces.append(f"{sign}{_rat_str(abs(coeff))} {sym}")
    return "e{ " + "".join(pieces) + " }"


def _gaussian_str(g: GaussianRational) -> tuple[bool, str | None]:
    """(negate, text); text None means the factor 1 and may be omitted."""
    if g.im == 0:
        negate = g.re < 0
        mag = abs(g.re)
        return negate, (None if mag == 1 else _rat_str(mag))
    if g.re == 0:
        negate = g.im < 0
        mag = abs(g.im)
        return negate, ("i" if mag == 1 else f"{_rat_str(mag)}i")
    im_mag = abs(g.im)
    im_txt = "" if im_mag == 1 else _rat_str(im_mag)
    sign = "+" if g.im > 0 else "-"
    return False, f"({_rat_str(g.re)}{sign}{im_txt}i)"


def _atom_str(kind: str, key) -> str:
    if kind == "eps":
        return f"eps({key})"
    return f"{kind}({','.join(str(i) for i in key)})"


_KIND_OF = {AlgebraElement: "a", DeltaVector: "d", EpsilonVector: "eps", SVector: "s"}


def format_element(v) -> str:
    """Canonical text for an element or bimodule vector; inverse of parsing."""
    kind = _KIND_OF[type(v)]
    if not v.terms:
        return "0"
    rendered: list[tuple[bool, str]] = []
    for key in sorted(v.terms):
        coeff = v.terms[key]
        atom = _atom_str(kind, key)
        for exp in sorted(coeff.terms, key=lambda e: (e.lam, e.tau, e.alphas)):
            negate, gtxt = _gaussian_str(coeff.terms[exp])
            factors = []
            if gtxt is not None:
                factors.append(gtxt)
            if not exp.is_zero():
                factors.append(format_phase(exp))
            factors.append(atom)
            rendered.append((negate, " * ".join(factors)))
    out = ("-" if rendered[0][0] else "") + rendered[0][1]
    for negate, text in rendered[1:]:
        out += (" - " if negate else " + ") + text
    return out


def format_scalar(s: SymScalar) -> str:
    if not s.terms:
        return "0"
    rendered = []
    for exp in sorted(s.terms, key=lambda e: (e.lam, e.tau, e.alphas)):
        negate, gtxt = _gaussian_str(s.terms[exp])
        factors = []
        if gtxt is not None:
            factors.append(gtxt)
        if not exp.is_zero():
            factors.append(format_phase(exp))
        if not factors:
            factors.append("1")
        rendered.append((negate, " * ".join(factors)))
    out = ("-" if rendered[0][0] else "") + rendered[0][1]
    for negate, text in rendered[1:]:
        out += (" - " if negate else " + ") + text
    return out


def format_class(cls: ModuleClass) -> str:
    alpha = "0" if cls.alpha.is_zero() else format_phase(cls.alpha)[3:-2].strip()
    return f"T( {alpha} ; {cls.p}, {cls.q} )"


def format_tensor(pairs) -> str:
    return " + ".join(f"{format_element(a)} (x) {format_element(b)}" for a, b in pairs)
