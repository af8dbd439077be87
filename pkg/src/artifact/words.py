"""Element expressions such as ``psi*phi:2`` or ``(iota*phi:1)^-3``.

Grammar::

    expr   := power ('*' power)*
    power  := atom ('^' integer)?
    atom   := name | '1' | '(' expr ')'
    name   := letters/digits/underscores, optionally followed by ':' digits
"""

from __future__ import annotations

import re

from .graph_of_groups import GraphOfGroups, NormalForm

TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*(?::\d+)?)|(?P<int>-?\d+)|(?P<op>[*^()]))")


class WordSyntaxError(ValueError):
    def __init__(self, text: str, position: int, message: str):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.position = position


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = TOKEN.match(text, pos)
        if not match:
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            raise WordSyntaxError(text, pos, "unexpected character")
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, gog: GraphOfGroups, text: str):
        self.gog = gog
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self, kind: str | None = None, value: str | None = None):
        token = self.peek()
        if token is None:
            raise WordSyntaxError(self.text, len(self.text), "unexpected end of expression")
        if (kind and token[0] != kind) or (value and token[1] != value):
            raise WordSyntaxError(self.text, token[2], f"unexpected {token[1]!r}")
        self.index += 1
        return token

    def expr(self) -> NormalForm:
        result = self.power()
        while self.peek() is not None and self.peek()[1] == "*":
            self.take("op", "*")
            result = self.gog.multiply(result, self.power())
        return result

    def power(self) -> NormalForm:
        base = self.atom()
        if self.peek() is not None and self.peek()[1] == "^":
            self.take("op", "^")
            exponent = int(self.take("int")[1])
            base = self.gog.power(base, exponent)
        return base

    def atom(self) -> NormalForm:
        token = self.peek()
        if token is None:
            raise WordSyntaxError(self.text, len(self.text), "unexpected end of expression")
        if token[1] == "(":
            self.take("op", "(")
            inner = self.expr()
            self.take("op", ")")
            return inner
        if token[0] == "int" and token[1] == "1":
            self.take()
            return self.gog.identity()
        if token[0] == "name":
            self.take()
            try:
                return self.gog.named(token[1])
            except KeyError:
                raise WordSyntaxError(self.text, token[2], f"unknown name {token[1]!r}") from None
        raise WordSyntaxError(self.text, token[2], f"unexpected {token[1]!r}")


def parse_word(gog: GraphOfGroups, text: str) -> NormalForm:
    """Evaluate an expression to its normal form at the base vertex."""
    parser = _Parser(gog, text)
    if not parser.tokens:
        raise WordSyntaxError(text, 0, "empty expression")
    result = parser.expr()
    if parser.peek() is not None:
        token = parser.peek()
        raise WordSyntaxError(text, token[2], f"unexpected {token[1]!r}")
    return result
