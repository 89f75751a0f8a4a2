"""
Recursive-descent parser for theta/eta expressions.

Grammar:
    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' ['-'] int)?
    atom   := int | 'pi' | 'sqrt2' | 'sqrt3' | 'i' | theta | eta
            | 'Dtau' '(' expr ')' | 'Dlog' '(' expr ')' | '(' expr ')' | '-' atom
    theta  := 'theta' '[' rational ',' rational ']' "'"* '(' rational 't' ')'
    eta    := 'eta' '(' rational 't' ')'
    rational := ['-'] int ['/' int]

The prime marks count z-derivatives; 't' marks tau inside argument lists.
Error offsets are 1-based columns, end of input being len(text) + 1.
"""

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from src.utils.errors import ExprSyntaxError

CONSTANTS = ("sqrt2", "sqrt3", "i")
PRIMES = ("'", "′")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))", re.S)


class Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos

    def __repr__(self) -> str:
        return f"Token({self.kind}, {self.text!r}, {self.pos})"


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        number, name, op = m.groups()
        if number is not None:
            tokens.append(Token("int", number, m.start(1)))
        elif name is not None:
            tokens.append(Token("name", name, m.start(2)))
        elif op is not None:
            tokens.append(Token("op", "'" if op in PRIMES else op, m.start(3)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# AST

class Node:
    _fields: Tuple[str, ...] = ()

    def __init__(self, *values, span: Optional[Tuple[int, int]] = None):
        for name, value in zip(self._fields, values):
            setattr(self, name, value)
        self.span = span

    def __eq__(self, other) -> bool:
        if type(self) is not type(other):
            return NotImplemented
        return all(getattr(self, f) == getattr(other, f) for f in self._fields)

    def __hash__(self) -> int:
        return hash((type(self).__name__,) + tuple(getattr(self, f) for f in self._fields))

    def __repr__(self) -> str:
        args = ", ".join(repr(getattr(self, f)) for f in self._fields)
        return f"{type(self).__name__}({args})"


class RationalLit(Node):
    _fields = ("value",)


class PiPow(Node):
    _fields = ("power",)


class Const(Node):
    _fields = ("name",)


class Theta(Node):
    _fields = ("eps", "eps_prime", "derivs", "tau_mult")


class Eta(Node):
    _fields = ("tau_mult",)


class Neg(Node):
    _fields = ("operand",)


class Add(Node):
    _fields = ("left", "right")


class Sub(Node):
    _fields = ("left", "right")


class Mul(Node):
    _fields = ("left", "right")


class Div(Node):
    _fields = ("left", "right")


class IntPow(Node):
    _fields = ("base", "exponent")


class Dtau(Node):
    _fields = ("operand",)


class Dlog(Node):
    _fields = ("operand",)


class Rescale(Node):
    """Evaluator-only node: substitute k*tau for tau"""
    _fields = ("operand", "k")


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    # token helpers

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        if tok.kind != "end":
            self.index += 1
        return tok

    def error(self, expected, tok: Optional[Token] = None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ExprSyntaxError(f"unexpected {found}", tok.pos + 1, expected)

    def expect_op(self, op: str) -> Token:
        tok = self.peek()
        if tok.kind == "op" and tok.text == op:
            return self.advance()
        self.error([op])

    def expect_name(self, name: str) -> Token:
        tok = self.peek()
        if tok.kind == "name" and tok.text == name:
            return self.advance()
        self.error([name])

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text in ops

    # grammar

    def parse(self) -> Node:
        node = self.expr()
        if self.peek().kind != "end":
            self.error(["+", "-", "*", "/", "^", "end of input"])
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            right = self.term()
            cls = Add if op == "+" else Sub
            node = cls(node, right, span=(node.span[0], right.span[1]))
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.at_op("*", "/"):
            op = self.advance().text
            right = self.factor()
            cls = Mul if op == "*" else Div
            node = cls(node, right, span=(node.span[0], right.span[1]))
        return node

    def factor(self) -> Node:
        node = self.atom()
        if self.at_op("^"):
            self.advance()
            sign = 1
            if self.at_op("-"):
                self.advance()
                sign = -1
            tok = self.peek()
            if tok.kind != "int":
                self.error(["integer exponent"])
            self.advance()
            node = IntPow(node, sign * int(tok.text), span=(node.span[0], tok.pos + len(tok.text)))
        return node

    def atom(self) -> Node:
        tok = self.peek()
        start = tok.pos
        if tok.kind == "int":
            self.advance()
            return RationalLit(Fraction(int(tok.text)), span=(start, start + len(tok.text)))
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            operand = self.atom()
            return Neg(operand, span=(start, operand.span[1]))
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expr()
            end = self.expect_op(")")
            node.span = (start, end.pos + 1)
            return node
        if tok.kind == "name":
            if tok.text == "pi":
                self.advance()
                return PiPow(1, span=(start, start + 2))
            if tok.text in CONSTANTS:
                self.advance()
                return Const(tok.text, span=(start, start + len(tok.text)))
            if tok.text == "theta":
                return self.theta()
            if tok.text == "eta":
                return self.eta()
            if tok.text in ("Dtau", "Dlog"):
                self.advance()
                self.expect_op("(")
                operand = self.expr()
                end = self.expect_op(")")
                cls = Dtau if tok.text == "Dtau" else Dlog
                return cls(operand, span=(start, end.pos + 1))
        self.error(["integer", "(", "-", "pi", "sqrt2", "sqrt3", "i", "theta", "eta", "Dtau", "Dlog"], tok)

    def rational(self) -> Fraction:
        sign = 1
        if self.at_op("-"):
            self.advance()
            sign = -1
        tok = self.peek()
        if tok.kind != "int":
            self.error(["integer"])
        self.advance()
        value = Fraction(int(tok.text))
        if self.at_op("/"):
            self.advance()
            den = self.peek()
            if den.kind != "int":
                self.error(["integer"])
            self.advance()
            if int(den.text) == 0:
                raise ExprSyntaxError("zero denominator", den.pos + 1, ["nonzero integer"])
            value /= int(den.text)
        return sign * value

    def tau_argument(self) -> Tuple[Fraction, Token]:
        self.expect_op("(")
        k_tok = self.peek()
        k = self.rational()
        if k <= 0:
            raise ExprSyntaxError("tau multiplier must be positive", k_tok.pos + 1, ["positive rational"])
        self.expect_name("t")
        end = self.expect_op(")")
        return k, end

    def theta(self) -> Node:
        start = self.expect_name("theta").pos
        self.expect_op("[")
        eps = self.rational()
        self.expect_op(",")
        eps_prime = self.rational()
        self.expect_op("]")
        derivs = 0
        while self.at_op("'"):
            self.advance()
            derivs += 1
        if not self.at_op("("):
            self.error(["(", "'"])
        k, end = self.tau_argument()
        return Theta(eps, eps_prime, derivs, k, span=(start, end.pos + 1))

    def eta(self) -> Node:
        start = self.expect_name("eta").pos
        k, end = self.tau_argument()
        return Eta(k, span=(start, end.pos + 1))


def parse(text: str) -> Node:
    return Parser(text).parse()


# rendering

_PRECEDENCE = {Add: 1, Sub: 1, Mul: 2, Div: 2, IntPow: 3}


def _wrap(node: Node, minimum: int) -> str:
    text = render(node)
    if _PRECEDENCE.get(type(node), 4) < minimum:
        return f"({text})"
    return text


def render(node: Node) -> str:
    """Inverse of parse up to spacing and redundant parentheses"""
    if isinstance(node, RationalLit):
        v = node.value
        if v.denominator == 1 and v >= 0:
            return str(v.numerator)
        body = f"{abs(v.numerator)}" if v.denominator == 1 else f"{abs(v.numerator)}/{v.denominator}"
        return f"-({body})" if v < 0 else f"({body})"
    if isinstance(node, PiPow):
        return "pi" if node.power == 1 else f"pi^{node.power}"
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Theta):
        return (f"theta[{node.eps},{node.eps_prime}]{chr(39) * node.derivs}"
                f"({node.tau_mult}t)")
    if isinstance(node, Eta):
        return f"eta({node.tau_mult}t)"
    if isinstance(node, Neg):
        return f"-{_wrap(node.operand, 4)}"
    if isinstance(node, Add):
        return f"{_wrap(node.left, 1)} + {_wrap(node.right, 2)}"
    if isinstance(node, Sub):
        return f"{_wrap(node.left, 1)} - {_wrap(node.right, 2)}"
    if isinstance(node, Mul):
        return f"{_wrap(node.left, 2)}*{_wrap(node.right, 3)}"
    if isinstance(node, Div):
        return f"{_wrap(node.left, 2)}/{_wrap(node.right, 3)}"
    if isinstance(node, IntPow):
        return f"{_wrap(node.base, 4)}^{node.exponent}"
    if isinstance(node, Dtau):
        return f"Dtau({render(node.operand)})"
    if isinstance(node, Dlog):
        return f"Dlog({render(node.operand)})"
    if isinstance(node, Rescale):
        raise ValueError("rescaled expressions have no surface syntax")
    raise TypeError(f"cannot render {node!r}")
