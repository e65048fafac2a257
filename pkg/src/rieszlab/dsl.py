"""The workbench expression language: lexer, AST, parser, printer.

Statement-oriented scripts with mandatory semicolons.  Element and
operator literals mirror the library constructors; all mathematical
symbols have ASCII spellings, with Unicode equivalents accepted on
input and ASCII emitted on output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str
    severity: str = "error"

    def __str__(self):
        return f"{self.line}:{self.col}: {self.severity}: {self.message}"


class DslSyntaxError(Exception):
    def __init__(self, message, line, col):
        super().__init__(message)
        self.diagnostic = Diagnostic(line, col, message)


class DslTypeError(Exception):
    def __init__(self, message, span=(0, 0)):
        super().__init__(f"{span[0]}:{span[1]}: {message}")
        self.span = span


# ---------------------------------------------------------------------------
# tokens
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int
    pos: int


_TWO_CHAR = {
    "->": "ARROW", "\\/": "JOIN", "/\\": "MEET", "^+": "POSPART",
    "^-": "NEGPART", "<<=": "LLEQ", "<=": "LEQ", "==": "EQEQ", "_|_": "PERP",
}
_ONE_CHAR = {
    ";": "SEMI", ",": "COMMA", ":": "COLON", "(": "LPAREN", ")": "RPAREN",
    "[": "LBRACK", "]": "RBRACK", "{": "LBRACE", "}": "RBRACE", "|": "BAR",
    "@": "AT", "=": "EQUALS", "*": "STAR", "+": "PLUS", "-": "MINUS",
    "/": "SLASH", "^": "CARET", ".": "DOT",
}
_UNICODE = {
    "⊑": ("LLEQ", "<<="),    # lateral order
    "⊥": ("PERP", "_|_"),    # disjointness
    "∨": ("JOIN", "\\/"),
    "∧": ("MEET", "/\\"),
    "⊔": ("IDENT", "lsup"),
    "⊓": ("IDENT", "linf"),
}


def tokenize(text: str):
    """Lex the script; raises DslSyntaxError on an unknown character."""
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _UNICODE:
            kind, ascii_text = _UNICODE[ch]
            tokens.append(Token(kind, ascii_text, line, col, i))
            i += 1
            col += 1
            continue
        matched = False
        for lit in ("<<=", "_|_", "->", "\\/", "/\\", "^+", "^-", "<=", "=="):
            if text.startswith(lit, i):
                tokens.append(Token(_TWO_CHAR[lit], lit, line, col, i))
                i += len(lit)
                col += len(lit)
                matched = True
                break
        if matched:
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("INT", text[i:j], line, col, i))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", text[i:j], line, col, i))
            col += j - i
            i = j
            continue
        if ch in _ONE_CHAR:
            tokens.append(Token(_ONE_CHAR[ch], ch, line, col, i))
            i += 1
            col += 1
            continue
        raise DslSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col, i))
    return tokens


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

def _node(cls):
    """AST dataclass: value-compared, with a position excluded from
    equality so round-trips compare structurally."""
    return dataclass(frozen=True)(cls)


@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class Name(Node):
    id: str
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ScalarLit(Node):
    value: Fraction
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ElementLit(Node):
    kind: str          # coord simple ec fin pl
    parts: tuple       # kind-specific payload of scalars / pairs
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class SpaceLit(Node):
    kind: str          # coordspace simplespace finspace ecspace plspace
    parts: tuple = ()
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class KernelLit(Node):
    entries: tuple     # (atom, target, ((coef, power), ...))
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class LinecLit(Node):
    coeffs: tuple      # ((index, coef), ...)
    unit: Node
    target: Node
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class TableLit(Node):
    entries: tuple     # ((key expr, value expr), ...)
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class LatmeetLit(Node):
    a: Node
    b: Node
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class SeriesLit(Node):
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Unary(Node):
    op: str
    operand: Node
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Binary(Node):
    op: str            # * + - linf lsup /\ \/
    left: Node
    right: Node
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Postfix(Node):
    op: str            # ^+ ^-
    operand: Node
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Abs(Node):
    operand: Node
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Apply(Node):
    fn: Node
    args: tuple
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Meyer(Node):
    operator: Node
    x: Node
    y: Node
    e: Node | None
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Pliev(Node):
    """Common refinement grid of two disjoint splittings."""

    us: tuple
    vs: tuple
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Rel(Node):
    op: str            # <= <<= _|_ ==
    left: Node
    right: Node
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class LetStmt(Node):
    name: str
    expr: Node
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class EvalStmt(Node):
    expr: Node
    level: int | None = None
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class CheckStmt(Node):
    check_id: str
    config: tuple = ()   # ((key, raw value string), ...)
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class SuiteStmt(Node):
    profile: str
    ids: tuple = ()
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class SearchStmt(Node):
    config: tuple = ()
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Script(Node):
    statements: tuple = ()


@dataclass
class ParseResult:
    script: Script | None
    diagnostics: list

    @property
    def ok(self) -> bool:
        return not self.diagnostics


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_MAX_DEPTH = 120


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0
        self.depth = 0

    def peek(self, ahead=0) -> Token:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def at(self, kind, text=None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def expect(self, kind, what=None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            line, col = tok.line, tok.col
            if tok.kind == "EOF" and self.i > 0:
                prev = self.tokens[self.i - 1]
                line, col = prev.line, prev.col + len(prev.text)
            raise DslSyntaxError(
                f"expected {what or kind}, found {tok.text!r}" if tok.text
                else f"expected {what or kind}, found end of input",
                line, col)
        return self.next()

    def error(self, message):
        tok = self.peek()
        raise DslSyntaxError(message, tok.line, tok.col)

    # -- statements ---------------------------------------------------------

    def script(self) -> tuple:
        stmts = []
        diags = []
        while not self.at("EOF"):
            try:
                stmts.append(self.statement())
            except DslSyntaxError as exc:
                diags.append(exc.diagnostic)
                while not (self.at("SEMI") or self.at("EOF")):
                    self.next()
                if self.at("SEMI"):
                    self.next()
        return Script(tuple(stmts)), diags

    def statement(self) -> Node:
        tok = self.peek()
        span = (tok.line, tok.col)
        if self.at("IDENT", "let"):
            self.next()
            name = self.expect("IDENT", "a binding name").text
            self.expect("EQUALS", "'='")
            expr = self.expression()
            self.expect("SEMI", "';'")
            return LetStmt(name, expr, span)
        if self.at("IDENT", "eval"):
            self.next()
            expr = self.expression()
            level = None
            if self.at("AT"):
                self.next()
                kw = self.expect("IDENT", "'level'")
                if kw.text != "level":
                    raise DslSyntaxError("expected 'level' after '@'",
                                         kw.line, kw.col)
                level = int(self.expect("INT", "a level").text)
            self.expect("SEMI", "';'")
            return EvalStmt(expr, level, span)
        if self.at("IDENT", "check"):
            self.next()
            check_id = self.glued_id()
            config = self.config_pairs()
            self.expect("SEMI", "';'")
            return CheckStmt(check_id, config, span)

        if self.at("IDENT", "suite"):
            self.next()
            prof = self.expect("IDENT", "'quick' or 'full'")
            if prof.text not in ("quick", "full"):
                raise DslSyntaxError("profile must be quick or full",
                                     prof.line, prof.col)
            ids = []
            while self.at("IDENT") and not self._config_ahead():
                ids.append(self.glued_id())
            self.expect("SEMI", "';'")
            return SuiteStmt(prof.text, tuple(ids), span)
        if self.at("IDENT", "search"):
            self.next()
            config = self.config_pairs()
            self.expect("SEMI", "';'")
            return SearchStmt(config, span)
        self.error("expected let, eval, check, suite or search")

    def _config_ahead(self) -> bool:
        return self.at("IDENT") and self.peek(1).kind == "EQUALS"

    def glued_id(self) -> str:
        """Identifiers like thm-1.1-e: adjacent ident/int/minus/dot runs."""
        first = self.expect("IDENT", "an identifier")
        parts = [first]
        while True:
            nxt = self.peek()
            last = parts[-1]
            if (nxt.kind in ("IDENT", "INT", "MINUS", "DOT")
                    and nxt.pos == last.pos + len(last.text)):
                parts.append(self.next())
            else:
                break
        return "".join(p.text for p in parts)

    def config_pairs(self) -> tuple:
        pairs = []
        while self._config_ahead():
            key = self.next().text
            self.expect("EQUALS", "'='")
            tok = self.peek()
            if tok.kind == "MINUS" or tok.kind == "INT":
                value = str(self.scalar())
            elif tok.kind == "IDENT":
                value = self.next().text
            else:
                self.error("expected a config value")
            pairs.append((key, value))
        return tuple(pairs)

    # -- expressions --------------------------------------------------------

    def expression(self) -> Node:
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            self.error("expression too deeply nested")
        try:
            left = self.vee()
            tok = self.peek()
            if tok.kind in ("LEQ", "LLEQ", "PERP", "EQEQ"):
                self.next()
                right = self.vee()
                return Rel(tok.text, left, right, (tok.line, tok.col))
            return left
        finally:
            self.depth -= 1

    def _binary_chain(self, sub, kinds):
        left = sub()
        while True:
            tok = self.peek()
            if tok.kind in kinds:
                op = tok.text
            elif tok.kind == "IDENT" and tok.text in kinds:
                op = tok.text
            else:
                return left
            self.next()
            right = sub()
            left = Binary(op, left, right, (tok.line, tok.col))

    def vee(self):
        return self._binary_chain(self.wedge, ("JOIN",))

    def wedge(self):
        return self._binary_chain(self.lsup, ("MEET",))

    def lsup(self):
        return self._binary_chain(self.linf, ("lsup",))

    def linf(self):
        return self._binary_chain(self.addsub, ("linf",))

    def addsub(self):
        return self._binary_chain(self.mul, ("PLUS", "MINUS"))

    def mul(self):
        return self._binary_chain(self.unary, ("STAR",))

    def unary(self):
        tok = self.peek()
        if tok.kind == "MINUS":
            if self.peek(1).kind == "INT":
                # negative numerals are scalar literals, not negations
                return ScalarLit(self.scalar(), (tok.line, tok.col))
            self.next()
            return Unary("-", self.unary(), (tok.line, tok.col))
        return self.postfix()

    def postfix(self):
        node = self.primary()
        while True:
            tok = self.peek()
            if tok.kind == "LPAREN":
                self.next()
                args = []
                if not self.at("RPAREN"):
                    args.append(self.expression())
                    while self.at("COMMA"):
                        self.next()
                        args.append(self.expression())
                self.expect("RPAREN", "')'")
                node = Apply(node, tuple(args), (tok.line, tok.col))
            elif tok.kind == "POSPART":
                self.next()
                node = Postfix("^+", node, (tok.line, tok.col))
            elif tok.kind == "NEGPART":
                self.next()
                node = Postfix("^-", node, (tok.line, tok.col))
            else:
                return node

    def scalar(self) -> Fraction:
        neg = False
        if self.at("MINUS"):
            self.next()
            neg = True
        num = int(self.expect("INT", "a number").text)
        if self.at("SLASH"):
            self.next()
            den_tok = self.expect("INT", "a denominator")
            den = int(den_tok.text)
            if den == 0:
                raise DslSyntaxError("zero denominator", den_tok.line,
                                     den_tok.col)
            value = Fraction(num, den)
        else:
            value = Fraction(num)
        return -value if neg else value

    def scalar_list(self, closer) -> tuple:
        out = []
        if not self.at(closer):
            out.append(self.scalar())
            while self.at("COMMA"):
                self.next()
                out.append(self.scalar())
        return tuple(out)

    def pair_list(self, first="scalar") -> tuple:
        out = []
        while self.at("LPAREN"):
            self.next()
            if first == "int":
                a = int(self.expect("INT", "an index").text)
            else:
                a = self.scalar()
            self.expect("COMMA", "','")
            b = self.scalar()
            self.expect("RPAREN", "')'")
            out.append((a, b))
            if self.at("COMMA"):
                self.next()
            else:
                break
        return tuple(out)

    def primary(self) -> Node:
        tok = self.peek()
        span = (tok.line, tok.col)
        if tok.kind == "INT" or tok.kind == "MINUS":
            return ScalarLit(self.scalar(), span)
        if tok.kind == "LPAREN":
            self.next()
            inner = self.expression()
            self.expect("RPAREN", "')'")
            return inner
        if tok.kind == "BAR":
            self.next()
            inner = self.expression()
            self.expect("BAR", "a closing '|'")
            return Abs(inner, span)
        if tok.kind != "IDENT":
            self.error(f"unexpected {tok.text!r} in an expression"
                       if tok.text else "unexpected end of input")
        name = tok.text
        if name == "coord":
            self.next()
            self.expect("LBRACK", "'['")
            vals = self.scalar_list("RBRACK")
            self.expect("RBRACK", "']'")
            return ElementLit("coord", vals, span)
        if name == "simple":
            self.next()
            self.expect("LBRACE", "'{'")
            pts = self.scalar_list("RBRACE")
            self.expect("RBRACE", "'}'")
            self.expect("LBRACK", "'['")
            vals = self.scalar_list("RBRACK")
            self.expect("RBRACK", "']'")
            return ElementLit("simple", (pts, vals), span)
        if name == "ec":
            self.next()
            self.expect("LBRACK", "'['")
            prefix = []
            if not self.at("BAR"):
                prefix.append(self.scalar())
                while self.at("COMMA"):
                    self.next()
                    prefix.append(self.scalar())
            self.expect("BAR", "'|'")
            tail = self.scalar()
            self.expect("RBRACK", "']'")
            return ElementLit("ec", (tuple(prefix), tail), span)
        if name == "fin":
            self.next()
            self.expect("LBRACE", "'{'")
            pairs = self.pair_list(first="int")
            self.expect("RBRACE", "'}'")
            return ElementLit("fin", pairs, span)
        if name == "pl":
            self.next()
            self.expect("LBRACE", "'{'")
            pairs = self.pair_list()
            self.expect("RBRACE", "'}'")
            return ElementLit("pl", pairs, span)
        if name == "coordspace":
            self.next()
            self.expect("LPAREN", "'('")
            n = int(self.expect("INT", "a dimension").text)
            self.expect("RPAREN", "')'")
            return SpaceLit("coordspace", (n,), span)
        if name == "simplespace":
            self.next()
            self.expect("LBRACE", "'{'")
            pts = self.scalar_list("RBRACE")
            self.expect("RBRACE", "'}'")
            return SpaceLit("simplespace", pts, span)
        if name in ("finspace", "ecspace", "plspace"):
            self.next()
            return SpaceLit(name, (), span)
        if name == "kernel":
            self.next()
            return self.kernel_literal(span)
        if name == "linec":
            self.next()
            return self.linec_literal(span)
        if name == "table":
            self.next()
            self.expect("LBRACE", "'{'")
            entries = []
            while not self.at("RBRACE"):
                key = self.expression()
                self.expect("ARROW", "'->'")
                value = self.expression()
                entries.append((key, value))
                if self.at("COMMA"):
                    self.next()
                else:
                    break
            self.expect("RBRACE", "'}'")
            return TableLit(tuple(entries), span)
        if name == "latmeet":
            self.next()
            self.expect("LPAREN", "'('")
            a = self.expression()
            self.expect("COMMA", "','")
            b = self.expression()
            self.expect("RPAREN", "')'")
            return LatmeetLit(a, b, span)
        if name == "series":
            self.next()
            return SeriesLit(span)
        if name == "meyer":
            self.next()
            self.expect("LPAREN", "'('")
            op = self.expression()
            self.expect("SEMI", "';' between the operator and its arguments")
            x = self.expression()
            self.expect("COMMA", "','")
            y = self.expression()
            e = None
            if self.at("SEMI"):
                self.next()
                e = self.expression()
            self.expect("RPAREN", "')'")
            return Meyer(op, x, y, e, span)
        if name == "pliev":
            self.next()
            self.expect("LPAREN", "'('")
            us = [self.expression()]
            while self.at("COMMA"):
                self.next()
                us.append(self.expression())
            self.expect("SEMI", "';' between the two splittings")
            vs = [self.expression()]
            while self.at("COMMA"):
                self.next()
                vs.append(self.expression())
            self.expect("RPAREN", "')'")
            return Pliev(tuple(us), tuple(vs), span)
        self.next()
        return Name(name, span)

    def kernel_literal(self, span) -> Node:
        self.expect("LBRACE", "'{'")
        entries = []
        while not self.at("RBRACE"):
            atom = int(self.expect("INT", "an atom index").text)
            target = atom
            if self.at("ARROW"):
                self.next()
                target = int(self.expect("INT", "a target atom").text)
            self.expect("COLON", "':'")
            tvar = self.expect("IDENT", "'t'")
            if tvar.text != "t":
                raise DslSyntaxError("kernel functions are written 't -> ...'",
                                     tvar.line, tvar.col)
            self.expect("ARROW", "'->'")
            entries.append((atom, target, self.poly_terms()))
            if self.at("COMMA"):
                self.next()
            else:
                break
        self.expect("RBRACE", "'}'")
        return KernelLit(tuple(entries), span)

    def poly_terms(self) -> tuple:
        terms = [self.poly_term(Fraction(1))]
        while self.at("PLUS") or self.at("MINUS"):
            sign = Fraction(1) if self.next().kind == "PLUS" else Fraction(-1)
            terms.append(self.poly_term(sign))
        return tuple(terms)

    def poly_term(self, sign: Fraction):
        coef = Fraction(1)
        power = None
        if self.at("MINUS") and self.peek(1).kind == "IDENT":
            self.next()
            sign = -sign
        if self.at("MINUS") or self.at("INT"):
            coef = self.scalar()
            if self.at("STAR"):
                self.next()
            else:
                return (sign * coef, 0)
        tvar = self.expect("IDENT", "'t'")
        if tvar.text != "t":
            raise DslSyntaxError("polynomials use the variable 't'",
                                 tvar.line, tvar.col)
        power = 1
        if self.at("CARET"):
            self.next()
            power = int(self.expect("INT", "an exponent").text)
        return (sign * coef, power)

    def linec_literal(self, span) -> Node:
        self.expect("LBRACE", "'{'")
        coeffs = []
        while self.at("INT"):
            idx = int(self.next().text)
            self.expect("COLON", "':'")
            coeffs.append((idx, self.scalar()))
            if self.at("COMMA"):
                self.next()
            else:
                break
        self.expect("SEMI", "';' before the unit clause")
        kw = self.expect("IDENT", "'unit'")
        if kw.text != "unit":
            raise DslSyntaxError("expected 'unit'", kw.line, kw.col)
        self.expect("ARROW", "'->'")
        unit = self.expression()
        self.expect("SEMI", "';' before the target clause")
        kw = self.expect("IDENT", "'target'")
        if kw.text != "target":
            raise DslSyntaxError("expected 'target'", kw.line, kw.col)
        target = self.expression()
        self.expect("RBRACE", "'}'")
        return LinecLit(tuple(coeffs), unit, target, span)


def parse(text: str) -> ParseResult:
    """Parse a script; never raises, returns diagnostics instead."""
    try:
        tokens = tokenize(text)
        parser = _Parser(tokens)
        script, diags = parser.script()
    except DslSyntaxError as exc:
        return ParseResult(None, [exc.diagnostic])
    except RecursionError:
        return ParseResult(None, [Diagnostic(1, 1, "input too deeply nested")])
    except Exception as exc:  # the no-crash contract beats precise spans
        return ParseResult(None, [Diagnostic(1, 1, f"unparseable input: {exc}")])
    if diags:
        return ParseResult(None, diags)
    return ParseResult(script, [])


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------

_PREC = {"\\/": 1, "/\\": 2, "lsup": 3, "linf": 4, "+": 5, "-": 5, "*": 6}


def print_script(script: Script) -> str:
    return "".join(_print_stmt(s) + "\n" for s in script.statements)


def _print_stmt(s: Node) -> str:
    if isinstance(s, LetStmt):
        return f"let {s.name} = {print_expr(s.expr)};"
    if isinstance(s, EvalStmt):
        suffix = f" @level {s.level}" if s.level is not None else ""
        return f"eval {print_expr(s.expr)}{suffix};"
    if isinstance(s, CheckStmt):
        cfg = "".join(f" {k}={v}" for k, v in s.config)
        return f"check {s.check_id}{cfg};"
    if isinstance(s, SuiteStmt):
        ids = "".join(f" {i}" for i in s.ids)
        return f"suite {s.profile}{ids};"
    if isinstance(s, SearchStmt):
        cfg = "".join(f" {k}={v}" for k, v in s.config)
        return f"search{cfg};"
    raise DslTypeError(f"cannot print {s!r}")


def print_expr(e: Node, parent_prec: int = 0) -> str:
    if isinstance(e, Name):
        return e.id
    if isinstance(e, ScalarLit):
        if e.value < 0 and parent_prec >= 7:
            return f"({e.value})"
        return str(e.value)
    if isinstance(e, ElementLit):
        return _print_element_lit(e)
    if isinstance(e, SpaceLit):
        if e.kind == "coordspace":
            return f"coordspace({e.parts[0]})"
        if e.kind == "simplespace":
            return "simplespace{%s}" % ",".join(str(v) for v in e.parts)
        return e.kind
    if isinstance(e, KernelLit):
        rows = []
        for atom, target, terms in e.entries:
            head = f"{atom}" if atom == target else f"{atom}->{target}"
            rows.append(f"{head}: t -> {_print_poly(terms)}")
        return "kernel{%s}" % ", ".join(rows)
    if isinstance(e, LinecLit):
        cs = ", ".join(f"{n}:{a}" for n, a in e.coeffs)
        return ("linec{%s; unit -> %s; target %s}"
                % (cs, print_expr(e.unit), print_expr(e.target)))
    if isinstance(e, TableLit):
        rows = ", ".join(f"{print_expr(k)} -> {print_expr(v)}"
                         for k, v in e.entries)
        return "table{%s}" % rows
    if isinstance(e, LatmeetLit):
        return f"latmeet({print_expr(e.a)}, {print_expr(e.b)})"
    if isinstance(e, SeriesLit):
        return "series"
    if isinstance(e, Unary):
        inner = print_expr(e.operand, 7)
        # a digit-leading operand would be absorbed into one numeral
        text = f"-({inner})" if inner[:1].isdigit() else f"-{inner}"
        return f"({text})" if parent_prec > 7 else text
    if isinstance(e, Binary):
        prec = _PREC[e.op]
        text = (f"{print_expr(e.left, prec)} {e.op} "
                f"{print_expr(e.right, prec + 1)}")
        return f"({text})" if prec < parent_prec else text
    if isinstance(e, Postfix):
        return f"{print_expr(e.operand, 8)}{e.op}"
    if isinstance(e, Abs):
        return f"|{print_expr(e.operand)}|"
    if isinstance(e, Apply):
        args = ", ".join(print_expr(a) for a in e.args)
        return f"{print_expr(e.fn, 8)}({args})"
    if isinstance(e, Meyer):
        tail = f"; {print_expr(e.e)}" if e.e is not None else ""
        return (f"meyer({print_expr(e.operator)}; {print_expr(e.x)}, "
                f"{print_expr(e.y)}{tail})")
    if isinstance(e, Pliev):
        us = ", ".join(print_expr(u) for u in e.us)
        vs = ", ".join(print_expr(v) for v in e.vs)
        return f"pliev({us}; {vs})"
    if isinstance(e, Rel):
        text = f"{print_expr(e.left, 1)} {e.op} {print_expr(e.right, 1)}"
        return f"({text})" if parent_prec > 0 else text
    raise DslTypeError(f"cannot print {e!r}")


def _print_element_lit(e: ElementLit) -> str:
    if e.kind == "coord":
        return "coord[%s]" % ",".join(str(v) for v in e.parts)
    if e.kind == "simple":
        pts, vals = e.parts
        return "simple{%s}[%s]" % (",".join(str(v) for v in pts),
                                   ",".join(str(v) for v in vals))
    if e.kind == "ec":
        prefix, tail = e.parts
        return "ec[%s|%s]" % (",".join(str(v) for v in prefix), tail)
    if e.kind == "fin":
        return "fin{%s}" % ",".join(f"({i},{v})" for i, v in e.parts)
    return "pl{%s}" % ",".join(f"({t},{v})" for t, v in e.parts)


def _print_poly(terms) -> str:
    out = []
    for k, (coef, power) in enumerate(terms):
        mag = abs(coef)
        if power == 0:
            body = str(mag)
        else:
            tpow = "t" if power == 1 else f"t^{power}"
            body = tpow if mag == 1 else f"{mag}*{tpow}"
        if k == 0:
            out.append(body if coef >= 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if coef >= 0 else f"- {body}")
    return " ".join(out) if out else "0"
