"""Expression grammar, parser and pretty printers.

Grammar (EBNF)::

    element := ("+"|"-")? term (("+"|"-") term)*
    term    := coeff "*"? factor* | factor+
    factor  := gen ("^" nat)?
    gen     := "X(" int ")" | "t(" int ")" | "th" | "E(" int ")"
    coeff   := "(" ratfunc ")" | rational
    rational:= nat ("/" nat)?

inside a coefficient, `ratfunc` is ordinary field arithmetic over integers
and the symbol H with operators + - * / ^ and parentheses.

Two distinct modes: "u" elements use the X/t/th alphabet, "z" elements use
the E(k) alphabet with "<>" accepted (and printed) between factors.  Mixing
alphabets is a syntax error; the quotient map between the algebras is an
explicit operation, never implied by notation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .coeffs import RationalFunction, RF_ONE, H, Polynomial, as_rf
from .uea import TOKEN_TO_GEN, UeaElement, straighten, word_degree
from .zalgebra import TOKEN_TO_ZGEN, ZElement, ZMonomial, Z_TOKENS, z_straighten


class ExprSyntaxError(ValueError):
    """Malformed expression; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnknownToken(ExprSyntaxError):
    pass


# ---------------------------------------------------------------------------
# Tokenizer

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<num>\d+)"
    r"|(?P<name>[A-Za-z]+)"
    r"|(?P<diamond><>)"
    r"|(?P<sym>[()^+\-*/])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num | name | diamond | sym | end
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise UnknownToken(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            out.append(Token(kind, chunk, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    out.append(Token("end", "", line, col))
    return out


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Factor:
    token: str  # generator token, e.g. "t(-1)" or "E(2)"
    exponent: int
    line: int
    column: int


@dataclass(frozen=True)
class Term:
    sign: int
    coeff: RationalFunction | None
    factors: tuple[Factor, ...]


@dataclass(frozen=True)
class ElementExpr:
    algebra: str  # "u" | "z"
    terms: tuple[Term, ...]


class _Parser:
    def __init__(self, tokens: list[Token], algebra: str):
        if algebra not in ("u", "z"):
            raise ValueError("algebra must be 'u' or 'z'")
        self.toks = tokens
        self.i = 0
        self.algebra = algebra

    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ExprSyntaxError(message, tok.line, tok.column)

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text:
            self.fail(f"expected {text!r}", t)
        return self.next()

    # -- element -------------------------------------------------------
    def element(self) -> ElementExpr:
        terms = []
        sign = 1
        if self.peek().text in ("+", "-"):
            sign = -1 if self.next().text == "-" else 1
        terms.append(self.term(sign))
        while self.peek().text in ("+", "-"):
            sign = -1 if self.next().text == "-" else 1
            terms.append(self.term(sign))
        if self.peek().kind != "end":
            self.fail("trailing input")
        return ElementExpr(self.algebra, tuple(terms))

    def term(self, sign: int) -> Term:
        coeff = None
        if self.peek().text == "(":
            self.next()
            coeff = self.ratfunc()
            self.expect(")")
            if self.peek().text == "*":
                self.next()
        elif self.peek().kind == "num":
            num = int(self.next().text)
            den = 1
            if self.peek().text == "/":
                self.next()
                t = self.peek()
                if t.kind != "num":
                    self.fail("expected integer denominator")
                dt = self.peek()
                den = int(self.next().text)
                if den == 0:
                    self.fail("division by zero in coefficient", dt)
            coeff = as_rf(Fraction(num, den))
            if self.peek().text == "*":
                self.next()
        factors = []
        while self.peek().kind == "name":
            factors.append(self.factor())
            if self.algebra == "z" and self.peek().kind == "diamond":
                self.next()
            elif self.peek().kind == "diamond":
                self.fail("'<>' is only valid in z-algebra expressions")
        if coeff is None and not factors:
            self.fail("expected a term")
        return Term(sign, coeff, tuple(factors))

    def factor(self) -> Factor:
        t = self.next()
        name = t.text
        if name == "th":
            token = "th"
        elif name in ("X", "t", "E"):
            self.expect("(")
            neg = False
            if self.peek().text == "-":
                self.next()
                neg = True
            nt = self.peek()
            if nt.kind != "num":
                self.fail("expected integer generator label")
            k = int(self.next().text)
            self.expect(")")
            token = f"{name}({-k if neg else k})"
        else:
            raise UnknownToken(f"unknown generator {name!r}", t.line, t.column)
        if self.algebra == "u" and token not in TOKEN_TO_GEN:
            self.fail(f"unknown generator {token!r}", t)
        if self.algebra == "z" and token not in TOKEN_TO_ZGEN:
            self.fail(f"unknown generator {token!r} (z-algebra uses E(-2)..E(2))", t)
        exp = 1
        if self.peek().text == "^":
            self.next()
            et = self.peek()
            if et.kind != "num":
                self.fail("expected integer exponent")
            exp = int(self.next().text)
        return Factor(token, exp, t.line, t.column)

    # -- rational functions in H --------------------------------------
    def ratfunc(self) -> RationalFunction:
        value = self.rterm()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            rhs = self.rterm()
            value = value + rhs if op == "+" else value - rhs
        return value

    def rterm(self) -> RationalFunction:
        value = self.runary()
        while self.peek().text in ("*", "/"):
            op = self.next().text
            rhs = self.runary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    self.fail("division by zero in coefficient")
                value = value / rhs
        return value

    def runary(self) -> RationalFunction:
        sign = 1
        while self.peek().text in ("+", "-"):
            if self.next().text == "-":
                sign = -sign
        value = self.ratom()
        if self.peek().text == "^":
            self.next()
            et = self.peek()
            if et.kind != "num":
                self.fail("expected integer exponent")
            value = value ** int(self.next().text)
        return value if sign == 1 else -value

    def ratom(self) -> RationalFunction:
        t = self.peek()
        if t.kind == "num":
            return as_rf(int(self.next().text))
        if t.text == "H":
            self.next()
            return as_rf(H)
        if t.kind == "name":
            raise UnknownToken(f"unknown symbol {t.text!r} in coefficient", t.line, t.column)
        if t.text == "(":
            self.next()
            value = self.ratfunc()
            self.expect(")")
            return value
        self.fail("expected a coefficient atom")


def parse(text: str, algebra: str = "u") -> ElementExpr:
    return _Parser(tokenize(text), algebra).element()


def parse_ratfunc(text: str) -> RationalFunction:
    p = _Parser(tokenize(text), "u")
    value = p.ratfunc()
    if p.peek().kind != "end":
        p.fail("trailing input")
    return value


def to_element(expr: ElementExpr):
    """Evaluate an AST to a canonical element of the selected algebra."""
    if expr.algebra == "u":
        total = UeaElement.zero()
        for t in expr.terms:
            items: list = [t.coeff if t.coeff is not None else RF_ONE]
            for f in t.factors:
                items.extend([TOKEN_TO_GEN[f.token]] * f.exponent)
            total = total + straighten(items, t.sign)
        return total
    total = ZElement.zero()
    for t in expr.terms:
        items = [t.coeff if t.coeff is not None else RF_ONE]
        for f in t.factors:
            items.extend([TOKEN_TO_ZGEN[f.token]] * f.exponent)
        total = total + z_straighten(items, t.sign)
    return total


def parse_element(text: str, algebra: str = "u"):
    return to_element(parse(text, algebra))


# ---------------------------------------------------------------------------
# Rendering

def _poly_str(p: Polynomial) -> str:
    return str(p)


def _coeff_text(c: RationalFunction) -> tuple[str, bool]:
    """(rendered coefficient, needs-parentheses)."""
    num, den = c.num, c.den
    if den == 1:
        s = _poly_str(num)
        atomic = num.degree <= 0 and num.lead >= 0 and num.lead.denominator == 1
        return s, not atomic
    ns = _poly_str(num)
    if num.degree > 0 or num.lead < 0 or num.lead.denominator != 1:
        ns = f"({ns})"
    ds = _poly_str(den)
    if len(den.coeffs) > 1:  # e.g. "H - 1"; bare "H" or "H^2" stays unwrapped
        ds = f"({ds})"
    return f"{ns}/{ds}", True


def _negate_coeff(c: RationalFunction) -> tuple[int, RationalFunction]:
    """Split off a leading sign for pretty "a - b" joins."""
    if c.num.lead < 0:
        return -1, -c
    return 1, c


def _render_terms(items: list[tuple[int, RationalFunction, str]]) -> str:
    """items: (sign, positive coefficient, monomial string)."""
    parts: list[str] = []
    for i, (sign, c, mono) in enumerate(items):
        cs, wrap = _coeff_text(c)
        if mono and c.is_one():
            body = mono
        elif mono:
            cs = f"({cs})" if wrap else cs
            body = f"{cs} * {mono}"
        else:
            body = f"({cs})" if wrap else cs
        if i == 0:
            parts.append(body if sign > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if sign > 0 else '-'} {body}")
    return " ".join(parts)


def _uea_mono_str(word) -> str:
    from .uea import GENERATORS

    return " ".join(
        f"{GENERATORS[g].token}^{e}" if e > 1 else GENERATORS[g].token for g, e in word
    )


def _z_mono_str(mono: ZMonomial) -> str:
    bits = [
        f"{Z_TOKENS[g]}^{e}" if e > 1 else Z_TOKENS[g]
        for g, e in enumerate(mono)
        if e
    ]
    return " <> ".join(bits)


_U_LATEX = {
    "X(-2)": r"X_{-2\alpha}",
    "X(-1)": r"X_{-\alpha}",
    "t(-2)": r"\tilde{x}_{-2\alpha}",
    "t(-1)": r"\tilde{x}_{-\alpha}",
    "th": r"\tilde{h}",
    "t(1)": r"\tilde{x}_{\alpha}",
    "t(2)": r"\tilde{x}_{2\alpha}",
    "X(1)": r"X_{\alpha}",
    "X(2)": r"X_{2\alpha}",
}

_Z_LATEX = {
    "E(-2)": r"\bar{x}_{-2\alpha}",
    "E(-1)": r"\bar{x}_{-\alpha}",
    "E(0)": r"\bar{h}",
    "E(1)": r"\bar{x}_{\alpha}",
    "E(2)": r"\bar{x}_{2\alpha}",
}


def _poly_latex(p: Polynomial) -> str:
    s = str(p).replace("*", " ")
    return re.sub(r"\^(\d\d+)", r"^{\1}", s)


def _coeff_latex(c: RationalFunction) -> str:
    if c.den == 1:
        s = _poly_latex(c.num)
        if c.num.degree > 0 or c.num.lead < 0:
            return rf"\left({s}\right)"
        return s
    return rf"\frac{{{_poly_latex(c.num)}}}{{{_poly_latex(c.den)}}}"


def _latex_terms(items: list[tuple[RationalFunction, str]]) -> str:
    parts = []
    for i, (c, mono) in enumerate(items):
        sign, c = _negate_coeff(c)
        if mono and c.is_one():
            body = mono
        elif mono:
            body = f"{_coeff_latex(c)} \\, {mono}"
        else:
            body = _coeff_latex(c)
        if i == 0:
            parts.append(body if sign > 0 else f"-{body}")
        else:
            parts.append(("+ " if sign > 0 else "- ") + body)
    return " ".join(parts)


def _json_payload(terms, word_fn) -> str:
    data = {
        "terms": [
            {
                "coeff": {"num": str(c.num), "den": str(c.den)},
                "word": word_fn(m),
            }
            for m, c in terms
        ]
    }
    return json.dumps(data, indent=2, sort_keys=True)


def render_uea(e: UeaElement, fmt: str = "text") -> str:
    from .uea import GENERATORS

    order = sorted(e.terms, key=lambda m: (word_degree(m), m))
    if fmt == "json":
        return _json_payload(
            [(m, e.terms[m]) for m in order],
            lambda m: [[GENERATORS[g].token, ex] for g, ex in m],
        )
    if not e:
        return "0"
    if fmt == "latex":
        items = []
        for m in order:
            mono = " ".join(
                _U_LATEX[GENERATORS[g].token] + (f"^{{{ex}}}" if ex > 1 else "")
                for g, ex in m
            )
            items.append((e.terms[m], mono))
        return _latex_terms(items)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    items = []
    for m in order:
        sign, c = _negate_coeff(e.terms[m])
        items.append((sign, c, _uea_mono_str(m)))
    return _render_terms(items)


def render_z(z: ZElement, fmt: str = "text") -> str:
    order = sorted(z.terms, key=lambda m: (m.degree(), m))
    if fmt == "json":
        return _json_payload(
            [(m, z.terms[m]) for m in order],
            lambda m: [[Z_TOKENS[g], ex] for g, ex in enumerate(m) if ex],
        )
    if not z:
        return "0"
    if fmt == "latex":
        items = []
        for m in order:
            mono = r" \mathbin{\diamond} ".join(
                _Z_LATEX[Z_TOKENS[g]] + (f"^{{{ex}}}" if ex > 1 else "")
                for g, ex in enumerate(m)
                if ex
            )
            items.append((z.terms[m], mono))
        return _latex_terms(items)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    items = []
    for m in order:
        sign, c = _negate_coeff(z.terms[m])
        items.append((sign, c, _z_mono_str(m)))
    return _render_terms(items)


def render(e, fmt: str = "text") -> str:
    if isinstance(e, UeaElement):
        return render_uea(e, fmt)
    if isinstance(e, ZElement):
        return render_z(e, fmt)
    raise TypeError(f"cannot render {type(e).__name__}")


def catalog_latex() -> str:
    """The two-generator rewrite rules as LaTeX align lines (derived form)."""
    from .zalgebra import RULE_KEYS, catalog

    cat = catalog()
    lines = [r"\begin{align}"]
    for key in RULE_KEYS:
        a, b = key
        lhs = (
            _Z_LATEX[Z_TOKENS[a]]
            + r" \mathbin{\diamond} "
            + _Z_LATEX[Z_TOKENS[b]]
        )
        rhs = render_z(cat.rules[key], "latex")
        lines.append(f"  {lhs} &= {rhs} \\\\")
    lines[-1] = lines[-1].rstrip("\\")
    lines.append(r"\end{align}")
    return "\n".join(lines)
