"""Reader and writer for the derivation file format.

A derivation is a nested parenthesized record:

    (rule <name>
      (concl <basis> |- <term> : <type>)
      (premises <derivation> ...)
      (side <type> <= <type>)?)

Bases are written ``x: <type>, y: <type>`` (empty allowed); terms and
types use the surface grammars of the calculus and type modules.
"""
from __future__ import annotations

import re

from .assignment import Basis, Derivation, Judgment, make_basis
from .terms import parse_term, print_term
from .typesys import parse_type, print_type

_RULES = {"Ax", "ArrowI", "UnitI", "ArrowE", "Omega", "InterI", "Leq"}

_TOK = re.compile(r"\(|\)|\|-|<=|:|,|[^()\s:,|<=]+|\S")


class DerivationSyntaxError(ValueError):
    pass


def _tokens(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOK.match(text, pos)
        if not m:
            raise DerivationSyntaxError(f"bad character {text[pos]!r}")
        out.append(m.group())
        pos = m.end()
    return out


class _Reader:
    def __init__(self, toks: list[str]):
        self.toks = toks
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i] if self.i < len(self.toks) else ""

    def pop(self) -> str:
        t = self.peek()
        self.i += 1
        return t

    def expect(self, want: str) -> None:
        got = self.pop()
        if got != want:
            raise DerivationSyntaxError(f"expected {want!r}, got {got!r}")

    def until_balanced(self, stops: tuple[str, ...]) -> str:
        """Collect raw tokens up to a stop token at depth zero."""
        depth = 0
        parts: list[str] = []
        while True:
            t = self.peek()
            if not t:
                raise DerivationSyntaxError("unexpected end of input")
            if depth == 0 and t in stops:
                return " ".join(parts)
            if t == "(":
                depth += 1
            elif t == ")":
                if depth == 0:
                    return " ".join(parts)
                depth -= 1
            parts.append(self.pop())

    def derivation(self) -> Derivation:
        self.expect("(")
        self.expect("rule")
        rule = self.pop()
        if rule not in _RULES:
            raise DerivationSyntaxError(f"unknown rule {rule!r}")
        self.expect("(")
        self.expect("concl")
        basis_src = self.until_balanced(("|-",))
        self.expect("|-")
        term_src = self.until_balanced((":",))
        self.expect(":")
        type_src = self.until_balanced((")",))
        self.expect(")")
        premises: list[Derivation] = []
        side = None
        while self.peek() == "(":
            self.pop()
            kind = self.pop()
            if kind == "premises":
                while self.peek() == "(":
                    premises.append(self.derivation())
                self.expect(")")
            elif kind == "side":
                lo = self.until_balanced(("<=",))
                self.expect("<=")
                hi = self.until_balanced((")",))
                self.expect(")")
                side = (parse_type(lo), parse_type(hi))
            else:
                raise DerivationSyntaxError(f"unknown section {kind!r}")
        self.expect(")")
        judgment = Judgment(_parse_basis(basis_src), parse_term(term_src), parse_type(type_src))
        return Derivation(rule, judgment, tuple(premises), side)


def _parse_basis(src: str) -> Basis:
    src = src.strip()
    if not src:
        return ()
    bindings = []
    depth = 0
    current: list[str] = []
    pieces: list[str] = []
    for tok in _tokens(src):
        if tok == "(":
            depth += 1
        elif tok == ")":
            depth -= 1
        if tok == "," and depth == 0:
            pieces.append(" ".join(current))
            current = []
        else:
            current.append(tok)
    if current:
        pieces.append(" ".join(current))
    for piece in pieces:
        name, _, ty = piece.partition(":")
        if not ty:
            raise DerivationSyntaxError(f"bad binding {piece!r}")
        bindings.append((name.strip(), parse_type(ty)))
    return make_basis(bindings)


def parse_derivation(text: str) -> Derivation:
    r = _Reader(_tokens(text))
    d = r.derivation()
    if r.peek():
        raise DerivationSyntaxError(f"trailing input {r.peek()!r}")
    return d


def print_basis(basis: Basis) -> str:
    return ", ".join(f"{name}: {print_type(t)}" for name, t in basis)


def print_derivation(d: Derivation, indent: int = 0) -> str:
    pad = "  " * indent
    J = d.conclusion
    head = f"{pad}(rule {d.rule}\n{pad}  (concl {print_basis(J.basis)} |- {print_term(J.subject)} : {print_type(J.tipo)})"
    parts = [head]
    if d.premises:
        inner = "\n".join(print_derivation(p, indent + 2) for p in d.premises)
        parts.append(f"{pad}  (premises\n{inner})")
    if d.side is not None:
        parts.append(f"{pad}  (side {print_type(d.side[0])} <= {print_type(d.side[1])})")
    return "\n".join(parts) + ")"
