"""Two-sorted term syntax for the unit/bind calculus.

Values are variables and abstractions; computations are ``unit V`` and
``M * V`` (bind).  An abstraction body is always a computation, the left
operand of bind is a computation and the right operand a value; no other
term forms exist.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True, slots=True)
class Variable:
    name: str


@dataclass(frozen=True, slots=True)
class Lambda:
    binder: str
    body: "Comp"


Value = Union[Variable, Lambda]


@dataclass(frozen=True, slots=True)
class Unit:
    value: Value


@dataclass(frozen=True, slots=True)
class Bind:
    left: "Comp"
    right: Value


Comp = Union[Unit, Bind]
Term = Union[Value, Comp]


class SortError(ValueError):
    """A term was used at the wrong sort (value vs computation)."""


class TermSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


def is_value(t: Term) -> bool:
    return isinstance(t, (Variable, Lambda))


def is_comp(t: Term) -> bool:
    return isinstance(t, (Unit, Bind))


# ---------------------------------------------------------------- variables

FRESH_PREFIX = "x"


def fresh_var(avoid: set[str] | frozenset[str]) -> str:
    """First name x0, x1, ... not in `avoid`; deterministic given `avoid`."""
    i = 0
    while f"{FRESH_PREFIX}{i}" in avoid:
        i += 1
    return f"{FRESH_PREFIX}{i}"


def free_vars(t: Term) -> frozenset[str]:
    match t:
        case Variable(name):
            return frozenset((name,))
        case Lambda(binder, body):
            return free_vars(body) - {binder}
        case Unit(v):
            return free_vars(v)
        case Bind(left, right):
            return free_vars(left) | free_vars(right)
    raise TypeError(f"not a term: {t!r}")


def all_vars(t: Term) -> frozenset[str]:
    """Every variable name occurring in t, free or bound."""
    match t:
        case Variable(name):
            return frozenset((name,))
        case Lambda(binder, body):
            return all_vars(body) | {binder}
        case Unit(v):
            return all_vars(v)
        case Bind(left, right):
            return all_vars(left) | all_vars(right)
    raise TypeError(f"not a term: {t!r}")


# ------------------------------------------------------------ substitution


def subst(t: Term, x: str, v: Value) -> Term:
    """Capture-avoiding substitution of value v for x in t (either sort)."""
    match t:
        case Variable(name):
            return v if name == x else t
        case Lambda(binder, body):
            if binder == x or x not in free_vars(body):
                return t
            if binder in free_vars(v):
                new = fresh_var(free_vars(body) | free_vars(v) | {x, binder})
                body = subst(body, binder, Variable(new))
                binder = new
            return Lambda(binder, subst(body, x, v))
        case Unit(w):
            return Unit(subst(w, x, v))
        case Bind(left, right):
            return Bind(subst(left, x, v), subst(right, x, v))
    raise TypeError(f"not a term: {t!r}")


def unshadow(t: Term, avoid: frozenset[str] | set[str] = frozenset()) -> Term:
    """Alpha-variant of t whose binders are pairwise distinct, disjoint
    from free variables and from `avoid`."""
    taken = set(avoid) | set(free_vars(t))

    def walk(s: Term) -> Term:
        match s:
            case Variable():
                return s
            case Lambda(x, b):
                if x in taken:
                    new = fresh_var(taken | all_vars(b))
                    taken.add(new)
                    return Lambda(new, walk(subst(b, x, Variable(new))))
                taken.add(x)
                return Lambda(x, walk(b))
            case Unit(v):
                return Unit(walk(v))
            case Bind(l, r):
                return Bind(walk(l), walk(r))
        raise TypeError(f"not a term: {s!r}")

    return walk(t)


def subst_comp(m: Comp, x: str, v: Value) -> Comp:
    return subst(m, x, v)


def subst_value(w: Value, x: str, v: Value) -> Value:
    return subst(w, x, v)


# ------------------------------------------------------------ alpha-equality

# de Bruijn skeletons are the structural internal form: bound variables
# become indices, free variables keep their names.


def debruijn(t: Term, env: tuple[str, ...] = ()) -> tuple:
    match t:
        case Variable(name):
            for i, b in enumerate(reversed(env)):
                if b == name:
                    return ("b", i)
            return ("f", name)
        case Lambda(binder, body):
            return ("lam", debruijn(body, env + (binder,)))
        case Unit(v):
            return ("unit", debruijn(v, env))
        case Bind(left, right):
            return ("bind", debruijn(left, env), debruijn(right, env))
    raise TypeError(f"not a term: {t!r}")


def alpha_eq(t1: Term, t2: Term) -> bool:
    if is_value(t1) != is_value(t2):
        raise SortError("alpha_eq compares terms of the same sort")
    return debruijn(t1) == debruijn(t2)


def alpha_key(t: Term) -> tuple:
    """Hashable key identifying t up to alpha-equivalence."""
    return debruijn(t)


# ------------------------------------------------------------------ printing


def _print_value_atom(v: Value) -> str:
    match v:
        case Variable(name):
            return name
        case Lambda():
            return f"({print_term(v)})"
    raise TypeError(f"not a value: {v!r}")


def print_term(t: Term) -> str:
    match t:
        case Variable(name):
            return name
        case Lambda(binder, body):
            return f"\\{binder}. {print_term(body)}"
        case Unit(v):
            return f"unit {_print_value_atom(v)}"
        case Bind(left, right):
            return f"{print_term(left)} * {_print_value_atom(right)}"
    raise TypeError(f"not a term: {t!r}")


# ------------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<unit>unit\b)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
      | (?P<lam>\\|λ)
      | (?P<star>\*|⋆)
      | (?P<at>@)
      | (?P<dot>\.)
      | (?P<lpar>\()
      | (?P<rpar>\))
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        assert kind is not None
        lexeme = m.group()
        if kind != "ws":
            toks.append(_Tok(kind, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    """Recursive descent over the surface grammar.

    Comp  ::= item (("*" ValueAtom) | ("@" item))*
    item  ::= "unit" ValueAtom | "(" Term ")" | ValueAtom
    ValueAtom ::= ident | lambda | "(" Term ")"
    lambda extends as far right as possible; "*" and "@" are
    left-associative at the same level; "@" is sugar for monadic
    application (see desugar_app).
    """

    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def pop(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, message: str) -> TermSyntaxError:
        t = self.peek()
        return TermSyntaxError(message, t.line, t.col)

    def sort_error(self, message: str) -> TermSyntaxError:
        t = self.peek()
        return TermSyntaxError(f"sort error: {message}", t.line, t.col)

    def parse_term(self) -> Term:
        first = self.parse_item()
        parts: list[tuple[str, Term]] = []
        while self.peek().kind in ("star", "at"):
            op = self.pop().kind
            if op == "star":
                arg = self.parse_value_atom()
            else:
                arg = self.parse_item()
            parts.append((op, arg))
        if not parts:
            return first
        acc = first
        if not is_comp(acc):
            raise self.sort_error("left operand of '*'/'@' must be a computation")
        for op, arg in parts:
            if op == "star":
                if not is_value(arg):
                    raise self.sort_error("right operand of '*' must be a value")
                acc = Bind(acc, arg)
            else:
                if not is_comp(arg):
                    raise self.sort_error("operands of '@' must be computations")
                acc = desugar_app(acc, arg)
        return acc

    def parse_item(self) -> Term:
        t = self.peek()
        if t.kind == "unit":
            self.pop()
            v = self.parse_value_atom()
            return Unit(v)
        return self.parse_value_atom(allow_comp=True)

    def parse_value_atom(self, allow_comp: bool = False) -> Term:
        t = self.peek()
        if t.kind == "ident":
            self.pop()
            return Variable(t.text)
        if t.kind == "lam":
            self.pop()
            name = self.peek()
            if name.kind != "ident":
                raise self.error("expected identifier after lambda")
            self.pop()
            if self.peek().kind != "dot":
                raise self.error("expected '.' after lambda binder")
            self.pop()
            body = self.parse_term()
            if not is_comp(body):
                raise self.sort_error("lambda body must be a computation")
            return Lambda(name.text, body)
        if t.kind == "lpar":
            self.pop()
            inner = self.parse_term()
            if self.peek().kind != "rpar":
                raise self.error("expected ')'")
            self.pop()
            if not allow_comp and not is_value(inner):
                raise self.sort_error("expected a value")
            return inner
        raise self.error(f"unexpected token {t.text!r}")


def parse_term(text: str) -> Term:
    parser = _Parser(_tokenize(text))
    t = parser.parse_term()
    if parser.peek().kind != "eof":
        raise parser.error(f"trailing input {parser.peek().text!r}")
    return t


def parse_comp(text: str) -> Comp:
    t = parse_term(text)
    if not is_comp(t):
        raise SortError("expected a computation")
    return t


def parse_value(text: str) -> Value:
    t = parse_term(text)
    if not is_value(t):
        raise SortError("expected a value")
    return t


# ------------------------------------------------------------------ app sugar


def desugar_app(m: Comp, n: Comp) -> Comp:
    """Monadic application M @ N == M * (\\z. N * z) with z fresh for N."""
    z = fresh_var(free_vars(n))
    return Bind(m, Lambda(z, Bind(n, Variable(z))))


# -------------------------------------------------------------- common terms


def omega_c() -> Comp:
    """The closed looping computation unit (\\x. unit x * x) * (\\x. unit x * x)."""
    w = Lambda("x", Bind(Unit(Variable("x")), Variable("x")))
    return Bind(Unit(w), w)


def subterms(t: Term) -> Iterator[Term]:
    """All subterms of t, preorder, including t itself."""
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        match s:
            case Lambda(_, body):
                stack.append(body)
            case Unit(v):
                stack.append(v)
            case Bind(left, right):
                stack.append(right)
                stack.append(left)


def term_size(t: Term) -> int:
    return sum(1 for _ in subterms(t))
