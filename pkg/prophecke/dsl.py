"""A small expression language over H.

    expr    := term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := "-" factor | INT | "(" expr ")" | literal
    literal := ("T" | "Tstar") "[" element "]" | ("E" | "z") "[" lambda "]"
    element := "1" | part ("*" part)*
    part    := "u(" ints ")" | "t(" ints ")" | "s" | "s<i>" | "s0" | "s0_<k>"
    lambda  := "(" ints ")" ["," ("1" | "t(" ints ")")]

``s<i>`` is the canonical lift of the i-th simple reflection (1-based), ``s``
its alias in semisimple rank one, ``s0`` the affine generator. Results print
in the canonical order of HeckeAlgebra.format.
"""

import logging
import re
from typing import Iterator, List, NamedTuple, Tuple

from prophecke.hecke import HeckeAlgebra, HeckeElement
from prophecke.prop_weyl import LambdaElement, ProPWeylElement

logger = logging.getLogger(__name__)


class DSLParseError(ValueError):
    """Raised for malformed expressions; ``position`` is the 0-based offset of
    the offending character."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


class Token(NamedTuple):
    kind: str
    value: str
    where: int


_TOKENS = {
    "name": r"[A-Za-z_][A-Za-z0-9_]*",
    "num": r"\d+",
    "lpar": r"\(",
    "rpar": r"\)",
    "lbrack": r"\[",
    "rbrack": r"\]",
    "plus": r"\+",
    "minus": r"-",
    "star": r"\*",
    "comma": r",",
    "skip": r"\s+",
    "error": r".",
}
_REGEX = re.compile("|".join(f"(?P<{name}>{text})" for name, text in _TOKENS.items()))
_SIMPLE = re.compile(r"s(\d+)")


def tokenize(source: str) -> Iterator[Token]:
    for mo in _REGEX.finditer(source):
        kind = str(mo.lastgroup)
        if kind == "skip":
            continue
        if kind == "error":
            raise DSLParseError(f"unexpected character {mo.group()!r}", mo.start())
        yield Token(kind, mo.group(), mo.start())


class _Parser:
    def __init__(self, algebra: HeckeAlgebra, source: str):
        self.alg = algebra
        self.source = source
        self.tokens: List[Token] = list(tokenize(source))
        self.pos = 0

    # ------------------------------------------------------------------ #
    # Token stream                                                       #
    # ------------------------------------------------------------------ #

    def peek(self, kind: str) -> bool:
        return self.pos < len(self.tokens) and self.tokens[self.pos].kind == kind

    def where(self) -> int:
        return self.tokens[self.pos].where if self.pos < len(self.tokens) else len(self.source)

    def expect(self, kind: str) -> Token:
        if not self.peek(kind):
            found = self.tokens[self.pos].value if self.pos < len(self.tokens) else "end of input"
            raise DSLParseError(f"expected {kind}, found {found!r}", self.where())
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    # ------------------------------------------------------------------ #
    # Grammar                                                            #
    # ------------------------------------------------------------------ #

    def parse(self) -> HeckeElement:
        if not self.tokens:
            raise DSLParseError("empty expression", 0)
        x = self.expr()
        if self.pos < len(self.tokens):
            raise DSLParseError(f"unexpected {self.tokens[self.pos].value!r}", self.where())
        return x

    def expr(self) -> HeckeElement:
        x = self.term()
        while self.peek("plus") or self.peek("minus"):
            op = self.expect(self.tokens[self.pos].kind)
            y = self.term()
            x = x + y if op.kind == "plus" else x - y
        return x

    def term(self) -> HeckeElement:
        x = self.factor()
        while self.peek("star"):
            self.expect("star")
            x = self.alg.mul_t(x, self.factor())
        return x

    def factor(self) -> HeckeElement:
        if self.peek("minus"):
            self.expect("minus")
            return -self.factor()
        if self.peek("num"):
            return self.alg.scalar(self.alg.field.from_int(int(self.expect("num").value)))
        if self.peek("lpar"):
            self.expect("lpar")
            x = self.expr()
            self.expect("rpar")
            return x
        start = self.where()
        name = self.expect("name").value
        self.expect("lbrack")
        if name == "T":
            out = self.alg.t(self.element())
        elif name == "Tstar":
            out = self.alg.t_star(self.element())
        elif name == "E":
            out = self.alg.e_of(self.lam())
        elif name == "z":
            out = self.alg.z_of(self.lam())
        else:
            raise DSLParseError(f"unknown literal {name!r}", start)
        self.expect("rbrack")
        return out

    def ints(self) -> Tuple[Tuple[int, ...], int]:
        start = self.where()
        self.expect("lpar")
        values = []
        while not self.peek("rpar"):
            if values:
                self.expect("comma")
            sign = -1 if self.peek("minus") else 1
            if sign < 0:
                self.expect("minus")
            values.append(sign * int(self.expect("num").value))
        self.expect("rpar")
        return tuple(values), start

    def vector(self) -> Tuple[int, ...]:
        values, start = self.ints()
        n = self.alg.rd.lattice_rank
        if len(values) != n:
            raise DSLParseError(f"expected {n} coordinates, got {len(values)}", start)
        return values

    def zkappa(self) -> Tuple[int, ...]:
        values, start = self.ints()
        n = len(self.alg.zk.orders)
        if len(values) != n:
            raise DSLParseError(f"expected {n} Z_kappa coordinates, got {len(values)}", start)
        return self.alg.zk.reduce(values)

    def part(self) -> ProPWeylElement:
        grp, rd = self.alg.group, self.alg.rd
        start = self.where()
        if self.peek("num"):
            tok = self.expect("num")
            if tok.value != "1":
                raise DSLParseError(f"unexpected number {tok.value} in an element", start)
            return grp.identity
        name = self.expect("name").value
        if name == "u":
            return grp.element(self.vector())
        if name == "t":
            return grp.element([0] * rd.lattice_rank, self.zkappa())
        if name == "s":
            if rd.rank_ss != 1:
                raise DSLParseError("'s' needs semisimple rank one; write s1, s2, ...", start)
            return grp.canonical_lift(rd.simple_reflection(0))
        for gen in grp.affine_generators:
            if gen.label == name and name.startswith("s0"):
                return gen.element
        mo = _SIMPLE.fullmatch(name)
        if mo and 1 <= int(mo.group(1)) <= rd.rank_ss:
            return grp.canonical_lift(rd.simple_reflection(int(mo.group(1)) - 1))
        raise DSLParseError(f"unknown element letter {name!r}", start)

    def element(self) -> ProPWeylElement:
        grp = self.alg.group
        g = self.part()
        while self.peek("star"):
            self.expect("star")
            g = grp.multiply(g, self.part())
        return g

    def lam(self) -> LambdaElement:
        mu = self.vector()
        t = self.alg.zk.zero
        if self.peek("comma"):
            self.expect("comma")
            start = self.where()
            if self.peek("num"):
                if self.expect("num").value != "1":
                    raise DSLParseError("the Z_kappa part is 1 or t(...)", start)
            elif self.expect("name").value == "t":
                t = self.zkappa()
            else:
                raise DSLParseError("the Z_kappa part is 1 or t(...)", start)
        return LambdaElement(mu, t)


def evaluate(algebra: HeckeAlgebra, source: str) -> HeckeElement:
    """Parse and evaluate an expression.

    Raises:
        DSLParseError: with the position of the first malformed token.
    """
    x = _Parser(algebra, source).parse()
    logger.debug("prophecke: evaluated %r to %d terms", source, len(x.terms))
    return x


def compute(algebra: HeckeAlgebra, source: str) -> str:
    return algebra.format(evaluate(algebra, source))
