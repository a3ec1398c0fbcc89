"""The let-based computational lambda-calculus and the two translations.

Terms are variables, abstractions, applications and lets; values are
variables and abstractions.  Reduction has beta and eta for values, the
let identity, let reassociation, let elimination on values, and two
sequencing rules pushing non-value operands of applications into lets.

to_moggi maps unit/bind terms into the let calculus (unit disappears,
bind becomes let); from_moggi maps back, wrapping translated values in
unit so that every image is a computation.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Optional, Union

from . import reduction as ub_reduction
from .terms import (
    Bind,
    Comp,
    Lambda,
    Term,
    Unit,
    Value,
    Variable,
    all_vars,
    fresh_var,
    is_comp,
)
from .terms import alpha_key as ub_alpha_key


@dataclass(frozen=True, slots=True)
class MVar:
    name: str


@dataclass(frozen=True, slots=True)
class MLam:
    binder: str
    body: "MTerm"


@dataclass(frozen=True, slots=True)
class MApp:
    fn: "MTerm"
    arg: "MTerm"


@dataclass(frozen=True, slots=True)
class MLet:
    binder: str
    bound: "MTerm"
    body: "MTerm"


MTerm = Union[MVar, MLam, MApp, MLet]


def is_mvalue(e: MTerm) -> bool:
    return isinstance(e, (MVar, MLam))


def m_free_vars(e: MTerm) -> frozenset[str]:
    match e:
        case MVar(name):
            return frozenset((name,))
        case MLam(x, body):
            return m_free_vars(body) - {x}
        case MApp(fn, arg):
            return m_free_vars(fn) | m_free_vars(arg)
        case MLet(x, bound, body):
            return m_free_vars(bound) | (m_free_vars(body) - {x})
    raise TypeError(f"not a term: {e!r}")


def m_all_vars(e: MTerm) -> frozenset[str]:
    match e:
        case MVar(name):
            return frozenset((name,))
        case MLam(x, body):
            return m_all_vars(body) | {x}
        case MApp(fn, arg):
            return m_all_vars(fn) | m_all_vars(arg)
        case MLet(x, bound, body):
            return m_all_vars(bound) | m_all_vars(body) | {x}
    raise TypeError(f"not a term: {e!r}")


def m_subst(e: MTerm, x: str, v: MTerm) -> MTerm:
    """Capture-avoiding substitution of a value for x."""
    match e:
        case MVar(name):
            return v if name == x else e
        case MLam(binder, body):
            if binder == x or x not in m_free_vars(body):
                return e
            if binder in m_free_vars(v):
                new = fresh_var(m_free_vars(body) | m_free_vars(v) | {x, binder})
                body = m_subst(body, binder, MVar(new))
                binder = new
            return MLam(binder, m_subst(body, x, v))
        case MApp(fn, arg):
            return MApp(m_subst(fn, x, v), m_subst(arg, x, v))
        case MLet(binder, bound, body):
            nb = m_subst(bound, x, v)
            if binder == x or x not in m_free_vars(body):
                return MLet(binder, nb, body)
            if binder in m_free_vars(v):
                new = fresh_var(m_free_vars(body) | m_free_vars(v) | {x, binder})
                body = m_subst(body, binder, MVar(new))
                binder = new
            return MLet(binder, nb, m_subst(body, x, v))
    raise TypeError(f"not a term: {e!r}")


def m_debruijn(e: MTerm, env: tuple[str, ...] = ()) -> tuple:
    match e:
        case MVar(name):
            for i, b in enumerate(reversed(env)):
                if b == name:
                    return ("b", i)
            return ("f", name)
        case MLam(x, body):
            return ("lam", m_debruijn(body, env + (x,)))
        case MApp(fn, arg):
            return ("app", m_debruijn(fn, env), m_debruijn(arg, env))
        case MLet(x, bound, body):
            return ("let", m_debruijn(bound, env), m_debruijn(body, env + (x,)))
    raise TypeError(f"not a term: {e!r}")


def m_alpha_eq(a: MTerm, b: MTerm) -> bool:
    return m_debruijn(a) == m_debruijn(b)


# ------------------------------------------------------------------ reduction


class MRule(enum.Enum):
    BETA_V = "betav"
    ETA_V = "etav"
    ID = "id"
    COMP = "comp"
    LET_V = "letv"
    LET_1 = "let1"
    LET_2 = "let2"


@dataclass(frozen=True, slots=True)
class MStep:
    rule: MRule
    result: MTerm


def m_root_steps(e: MTerm) -> list[MStep]:
    out: list[MStep] = []
    match e:
        case MApp(MLam(x, body), arg) if is_mvalue(arg):
            out.append(MStep(MRule.BETA_V, m_subst(body, x, arg)))
        case _:
            pass
    match e:
        case MLam(x, MApp(v, MVar(y))) if x == y and is_mvalue(v) and x not in m_free_vars(v):
            out.append(MStep(MRule.ETA_V, v))
    match e:
        case MLet(x, bound, MVar(y)) if x == y:
            out.append(MStep(MRule.ID, bound))
    match e:
        case MLet(x2, MLet(x1, e1, e2), body):
            if x1 in m_free_vars(body):
                new = fresh_var(m_all_vars(e) | m_free_vars(body))
                e2 = m_subst(e2, x1, MVar(new))
                x1 = new
            out.append(MStep(MRule.COMP, MLet(x1, e1, MLet(x2, e2, body))))
    match e:
        case MLet(x, bound, body) if is_mvalue(bound):
            out.append(MStep(MRule.LET_V, m_subst(body, x, bound)))
    match e:
        case MApp(fn, arg) if not is_mvalue(fn):
            x = fresh_var(m_all_vars(e))
            out.append(MStep(MRule.LET_1, MLet(x, fn, MApp(MVar(x), arg))))
    match e:
        case MApp(fn, arg) if is_mvalue(fn) and not is_mvalue(arg):
            x = fresh_var(m_all_vars(e))
            out.append(MStep(MRule.LET_2, MLet(x, arg, MApp(fn, MVar(x)))))
    return out


def m_enumerate_steps(e: MTerm) -> list[MStep]:
    """One-step reducts under the full compatible closure (under lambda,
    both application operands, both let positions)."""
    steps = list(m_root_steps(e))
    match e:
        case MLam(x, body):
            steps.extend(MStep(s.rule, MLam(x, s.result)) for s in m_enumerate_steps(body))
        case MApp(fn, arg):
            steps.extend(MStep(s.rule, MApp(s.result, arg)) for s in m_enumerate_steps(fn))
            steps.extend(MStep(s.rule, MApp(fn, s.result)) for s in m_enumerate_steps(arg))
        case MLet(x, bound, body):
            steps.extend(MStep(s.rule, MLet(x, s.result, body)) for s in m_enumerate_steps(bound))
            steps.extend(MStep(s.rule, MLet(x, bound, s.result)) for s in m_enumerate_steps(body))
    seen: set[tuple] = set()
    out = []
    for s in steps:
        k = (s.rule, m_debruijn(s.result))
        if k not in seen:
            seen.add(k)
            out.append(s)
    return out


# ---------------------------------------------------------------- printing


def m_print(e: MTerm) -> str:
    match e:
        case MVar(name):
            return name
        case MLam(x, body):
            return f"\\{x}. {m_print(body)}"
        case MLet(x, bound, body):
            b = m_print(bound)
            if isinstance(bound, (MLam, MLet)):
                b = f"({b})"
            return f"let {x} = {b} in {m_print(body)}"
        case MApp(fn, arg):
            f = m_print(fn)
            if isinstance(fn, (MLam, MLet)):
                f = f"({f})"
            a = m_print(arg)
            if isinstance(arg, (MLam, MLet, MApp)):
                a = f"({a})"
            return f"{f} {a}"
    raise TypeError(f"not a term: {e!r}")


_M_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<let>let\b) | (?P<in>in\b)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
      | (?P<lam>\\|λ) | (?P<dot>\.) | (?P<eq>=)
      | (?P<lpar>\() | (?P<rpar>\))
    """,
    re.VERBOSE,
)


class MSyntaxError(ValueError):
    pass


def _m_tokens(text: str) -> list[tuple[str, str]]:
    toks, pos = [], 0
    while pos < len(text):
        m = _M_TOKEN_RE.match(text, pos)
        if m is None:
            raise MSyntaxError(f"unexpected character {text[pos]!r} at offset {pos}")
        if m.lastgroup != "ws":
            toks.append((m.lastgroup, m.group()))
        pos = m.end()
    toks.append(("eof", ""))
    return toks


class _MParser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def pop(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind):
        k, text = self.pop()
        if k != kind:
            raise MSyntaxError(f"expected {kind}, got {text!r}")
        return text

    def parse(self) -> MTerm:
        kind, _ = self.peek()
        if kind == "lam":
            self.pop()
            x = self.expect("ident")
            self.expect("dot")
            return MLam(x, self.parse())
        if kind == "let":
            self.pop()
            x = self.expect("ident")
            self.expect("eq")
            bound = self.parse_app()
            self.expect("in")
            return MLet(x, bound, self.parse())
        return self.parse_app()

    def parse_app(self) -> MTerm:
        acc = self.parse_atom()
        while self.peek()[0] in ("ident", "lpar", "lam"):
            if self.peek()[0] == "lam":
                acc = MApp(acc, self.parse())
                break
            acc = MApp(acc, self.parse_atom())
        return acc

    def parse_atom(self) -> MTerm:
        kind, text = self.peek()
        if kind == "ident":
            self.pop()
            return MVar(text)
        if kind == "lpar":
            self.pop()
            inner = self.parse()
            self.expect("rpar")
            return inner
        raise MSyntaxError(f"unexpected token {text!r}")


def m_parse(text: str) -> MTerm:
    p = _MParser(_m_tokens(text))
    e = p.parse()
    if p.peek()[0] != "eof":
        raise MSyntaxError(f"trailing input {p.peek()[1]!r}")
    return e


# --------------------------------------------------------------- translation


def to_moggi(t: Term) -> MTerm:
    """unit disappears, bind sequences through a fresh let."""
    match t:
        case Variable(name):
            return MVar(name)
        case Lambda(x, body):
            return MLam(x, to_moggi(body))
        case Unit(v):
            return to_moggi(v)
        case Bind(left, right):
            x = fresh_var(all_vars(left) | all_vars(right))
            return MLet(x, to_moggi(left), MApp(to_moggi(right), MVar(x)))
    raise TypeError(f"not a term: {t!r}")


def from_moggi_value(v: MTerm) -> Value:
    match v:
        case MVar(name):
            return Variable(name)
        case MLam(x, body):
            if is_mvalue(body):
                return Lambda(x, Unit(from_moggi_value(body)))
            return Lambda(x, from_moggi_comp(body))
    raise TypeError(f"not a value: {v!r}")


def from_moggi_comp(n: MTerm) -> Comp:
    match n:
        case MApp(f, a) if is_mvalue(f) and is_mvalue(a):
            return Bind(Unit(from_moggi_value(a)), from_moggi_value(f))
        case MApp(f, a) if is_mvalue(f):
            # value applied to a non-value: run the argument, feed the function
            return Bind(from_moggi_comp(a), from_moggi_value(f))
        case MApp(f, a) if is_mvalue(a):
            va = from_moggi_value(a)
            x = fresh_var(m_all_vars(n))
            return Bind(from_moggi_comp(f), Lambda(x, Bind(Unit(va), Variable(x))))
        case MApp(f, a):
            x = fresh_var(m_all_vars(n))
            return Bind(from_moggi_comp(f), Lambda(x, Bind(from_moggi_comp(a), Variable(x))))
        case MLet(x, bound, body):
            left = Unit(from_moggi_value(bound)) if is_mvalue(bound) else from_moggi_comp(bound)
            right = Unit(from_moggi_value(body)) if is_mvalue(body) else from_moggi_comp(body)
            return Bind(left, Lambda(x, right))
    raise TypeError(f"not a non-value: {n!r}")


def from_moggi(e: MTerm) -> Comp:
    """Translate any term to a computation, wrapping values in unit."""
    if is_mvalue(e):
        return Unit(from_moggi_value(e))
    return from_moggi_comp(e)


# ------------------------------------------------------------- conversion


def _m_reachable(e: MTerm, budget: int) -> tuple[dict[tuple, MTerm], bool]:
    seen = {m_debruijn(e): e}
    frontier = [e]
    exhausted = True
    while frontier and budget > 0:
        nxt = []
        for t in frontier:
            for s in m_enumerate_steps(t):
                budget -= 1
                k = m_debruijn(s.result)
                if k not in seen:
                    seen[k] = s.result
                    nxt.append(s.result)
                if budget <= 0:
                    exhausted = False
                    break
            if budget <= 0:
                exhausted = False
                break
        frontier = nxt
    if frontier:
        exhausted = False
    return seen, exhausted


def convertible(a, b, fuel: int = 300) -> Optional[bool]:
    """Bounded bidirectional joinability on either calculus.

    True when a common reduct is found; False when both reachable sets
    were exhausted without meeting; None when budgets ran out
    (inconclusive, since conversion is only semi-decided by joining).
    """
    if isinstance(a, (MVar, MLam, MApp, MLet)):
        if m_alpha_eq(a, b):
            return True
        ra, ea = _m_reachable(a, fuel)
        rb, eb = _m_reachable(b, fuel)
        if set(ra) & set(rb):
            return True
        return False if ea and eb else None
    if is_comp(a):
        common = ub_reduction.joinable(a, b, fuel)
        return True if common is not None else None
    raise TypeError("convertible expects two terms of one calculus")


# ------------------------------------------------------------ preservation


@dataclass(frozen=True, slots=True)
class PreservationResult:
    rule: MRule
    source_image: Comp
    target_image: Comp
    reached: bool
    steps: int
    eta_join: bool = False

    @property
    def preserved(self) -> bool:
        return self.reached or self.eta_join


def image_reaches(src: Comp, dst: Comp, fuel: int, allow_eta: bool) -> tuple[bool, int]:
    """Breadth-first check that src reduces to dst (up to alpha)."""
    rules = set(ub_reduction.DEFAULT_RULES)
    if allow_eta:
        rules.add(ub_reduction.Rule.ETA_C)
    target = ub_alpha_key(dst)
    seen = {ub_alpha_key(src)}
    frontier = [(src, 0)]
    if ub_alpha_key(src) == target:
        return True, 0
    budget = fuel
    while frontier and budget > 0:
        nxt = []
        for term, depth in frontier:
            for s in ub_reduction.enumerate_steps(term, rules):
                budget -= 1
                k = ub_alpha_key(s.result)
                if k == target:
                    return True, depth + 1
                if k not in seen:
                    seen.add(k)
                    nxt.append((s.result, depth + 1))
                if budget <= 0:
                    break
            if budget <= 0:
                break
        frontier = nxt
    return False, -1


def check_preservation(e: MTerm, fuel: int = 400) -> list[PreservationResult]:
    """For every one-step reduct e > e', verify the translation of e
    reaches the translation of e'.

    Eta is enabled for eta steps.  Sequencing steps that name a non-value
    argument eta-expand the function position in the image, so there the
    images are connected by an eta step from the target back to the
    source; those are checked as a join with eta enabled instead of a
    forward simulation.
    """
    out = []
    src = from_moggi(e)
    for s in m_enumerate_steps(e):
        dst = from_moggi(s.result)
        ok, n = image_reaches(src, dst, fuel, allow_eta=s.rule is MRule.ETA_V)
        eta_join = False
        if not ok:
            back, nb = image_reaches(dst, src, fuel, allow_eta=True)
            if back:
                eta_join, n = True, nb
            else:
                joined = ub_reduction.joinable(
                    src, dst, fuel, ub_reduction.ALL_RULES
                )
                eta_join = joined is not None
        out.append(PreservationResult(s.rule, src, dst, ok, n, eta_join))
    return out
