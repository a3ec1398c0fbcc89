"""Reduction for the unit/bind calculus.

Three notions of reduction on computations:

    betac)  unit V * (\\x. M)        -->  M[V/x]
    id)     M * (\\x. unit x)        -->  M
    ass)    (L * \\x.M) * (\\y. N)   -->  L * \\x.(M * \\y.N)   (x not free in N)

plus the optional, confluence-breaking value rule

    etac)   \\x. (unit x * V)        -->  V                    (x not free in V)

together with their compatible closure, complete developments, the
left-of-star termination measure for ass, and bounded joinability search.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .terms import (
    Bind,
    Comp,
    Lambda,
    Term,
    Unit,
    Variable,
    alpha_key,
    free_vars,
    fresh_var,
    is_comp,
    subst,
)


class Rule(enum.Enum):
    BETA_C = "betac"
    ID = "id"
    ASS = "ass"
    ETA_C = "etac"


DEFAULT_RULES = frozenset((Rule.BETA_C, Rule.ID, Rule.ASS))
ALL_RULES = frozenset(Rule)

# Child selectors for positions under the compatible closure.
UNIT_ARG = "unit-arg"
BIND_LEFT = "bind-left"
BIND_RIGHT = "bind-right"
LAMBDA_BODY = "lambda-body"

Position = tuple[str, ...]


@dataclass(frozen=True, slots=True)
class Step:
    rule: Rule
    position: Position
    result: Comp

    def position_str(self) -> str:
        return ".".join(self.position) if self.position else "root"


def root_step(t: Term, rule: Rule) -> Optional[Term]:
    """Contract t at the root by `rule`, or None if it does not match.

    The bound variable of an ass redex is renamed when it occurs free in
    the continuation, so the step is always applicable to the shape.
    """
    match rule:
        case Rule.BETA_C:
            match t:
                case Bind(Unit(v), Lambda(x, m)):
                    return subst(m, x, v)
        case Rule.ID:
            match t:
                case Bind(m, Lambda(x, Unit(Variable(y)))) if x == y:
                    return m
        case Rule.ASS:
            match t:
                case Bind(Bind(l, Lambda(x, m)), Lambda(y, n)):
                    if x in free_vars(n):
                        new = fresh_var(free_vars(m) | free_vars(n) | {x, y})
                        m = subst(m, x, Variable(new))
                        x = new
                    return Bind(l, Lambda(x, Bind(m, Lambda(y, n))))
        case Rule.ETA_C:
            match t:
                case Lambda(x, Bind(Unit(Variable(y)), v)) if x == y:
                    if x not in free_vars(v):
                        return v
    return None


def _positions(t: Term, path: Position = ()) -> Iterator[tuple[Position, Term]]:
    """Preorder traversal of all subterm positions (leftmost-outermost)."""
    yield path, t
    match t:
        case Lambda(_, body):
            yield from _positions(body, path + (LAMBDA_BODY,))
        case Unit(v):
            yield from _positions(v, path + (UNIT_ARG,))
        case Bind(left, right):
            yield from _positions(left, path + (BIND_LEFT,))
            yield from _positions(right, path + (BIND_RIGHT,))


def replace_at(t: Term, path: Position, new: Term) -> Term:
    if not path:
        return new
    sel, rest = path[0], path[1:]
    match t, sel:
        case Lambda(binder, body), "lambda-body":
            return Lambda(binder, replace_at(body, rest, new))
        case Unit(v), "unit-arg":
            return Unit(replace_at(v, rest, new))
        case Bind(left, right), "bind-left":
            return Bind(replace_at(left, rest, new), right)
        case Bind(left, right), "bind-right":
            return Bind(left, replace_at(right, rest, new))
    raise ValueError(f"selector {sel!r} does not address {t!r}")


def subterm_at(t: Term, path: Position) -> Term:
    for sel in path:
        match t, sel:
            case Lambda(_, body), "lambda-body":
                t = body
            case Unit(v), "unit-arg":
                t = v
            case Bind(left, _), "bind-left":
                t = left
            case Bind(_, right), "bind-right":
                t = right
            case _:
                raise ValueError(f"selector {sel!r} does not address {t!r}")
    return t


def enumerate_steps(m: Comp, rules: frozenset[Rule] | set[Rule] = DEFAULT_RULES) -> list[Step]:
    """All one-step reducts of m, leftmost-outermost first.

    Without ETA_C only computation subterms are redex candidates; with it
    value subterms are candidates too.
    """
    rule_order = [Rule.BETA_C, Rule.ID, Rule.ASS, Rule.ETA_C]
    steps: list[Step] = []
    for path, sub in _positions(m):
        for rule in rule_order:
            if rule not in rules:
                continue
            if rule is Rule.ETA_C:
                if not isinstance(sub, Lambda):
                    continue
            elif not is_comp(sub):
                continue
            contractum = root_step(sub, rule)
            if contractum is not None:
                steps.append(Step(rule, path, replace_at(m, path, contractum)))
    return steps


@dataclass(frozen=True, slots=True)
class NormalizeOutcome:
    normal_form: bool
    term: Comp
    trace: tuple[Step, ...] = field(default=())


def normalize(
    m: Comp,
    rules: frozenset[Rule] | set[Rule] = DEFAULT_RULES,
    fuel: int = 1000,
    keep_trace: bool = False,
) -> NormalizeOutcome:
    """Leftmost-outermost normalization with a step budget."""
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    trace: list[Step] = []
    cur = m
    for _ in range(fuel):
        steps = enumerate_steps(cur, rules)
        if not steps:
            return NormalizeOutcome(True, cur, tuple(trace))
        step = steps[0]
        if keep_trace:
            trace.append(step)
        cur = step.result
    if not enumerate_steps(cur, rules):
        return NormalizeOutcome(True, cur, tuple(trace))
    return NormalizeOutcome(False, cur, tuple(trace))


# ------------------------------------------------------ parallel reduction

# The simultaneous contraction relation only covers betac and id; ass is
# intentionally excluded and handled by commutation.


def parallel_successors(t: Term, _memo: dict | None = None) -> list[Term]:
    """All terms reachable from t by one parallel (simultaneous) step."""
    if _memo is None:
        _memo = {}
    key = id(t)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    out: dict[tuple, Term] = {}

    def add(s: Term) -> None:
        out.setdefault(alpha_key(s), s)

    match t:
        case Variable():
            add(t)
        case Lambda(x, body):
            for b in parallel_successors(body, _memo):
                add(Lambda(x, b))
        case Unit(v):
            for w in parallel_successors(v, _memo):
                add(Unit(w))
        case Bind(left, right):
            lefts = parallel_successors(left, _memo)
            rights = parallel_successors(right, _memo)
            for l2 in lefts:
                for r2 in rights:
                    add(Bind(l2, r2))
            match left, right:
                case Unit(v), Lambda(x, body):
                    for v2 in parallel_successors(v, _memo):
                        for b2 in parallel_successors(body, _memo):
                            add(subst(b2, x, v2))
            match right:
                case Lambda(x, Unit(Variable(y))) if x == y:
                    for l2 in lefts:
                        add(l2)
    result = list(out.values())
    _memo[key] = result
    return result


def parallel_reduces(t1: Term, t2: Term) -> bool:
    """Whether t2 is a one-step parallel reduct of t1 (reflexive)."""
    target = alpha_key(t2)
    return any(alpha_key(s) == target for s in parallel_successors(t1))


def star(t: Term) -> Term:
    """The complete development: contract every betac/id redex of t at once.

    Clause priority on binds: betac shape first, then id shape, then
    structural descent; this resolves the overlap on unit V * \\x.unit x
    in favour of the betac clause.
    """
    match t:
        case Variable():
            return t
        case Lambda(x, body):
            return Lambda(x, star(body))
        case Unit(v):
            return Unit(star(v))
        case Bind(left, right):
            match left, right:
                case Unit(v), Lambda(x, body):
                    return subst(star(body), x, star(v))
            match right:
                case Lambda(x, Unit(Variable(y))) if x == y:
                    return star(left)
            return Bind(star(left), star(right))
    raise TypeError(f"not a term: {t!r}")


# ------------------------------------------------------------- ass measure


def _stars_and_measure(t: Term) -> tuple[int, int]:
    match t:
        case Variable():
            return 0, 0
        case Lambda(_, body):
            return _stars_and_measure(body)
        case Unit(v):
            return _stars_and_measure(v)
        case Bind(left, right):
            ls, lm = _stars_and_measure(left)
            rs, rm = _stars_and_measure(right)
            # every star of the left subterm is to the left of this bind
            return ls + rs + 1, lm + rm + ls
    raise TypeError(f"not a term: {t!r}")


def ass_measure(m: Comp) -> int:
    """Number of ordered pairs of binds where one occurs in the left
    subterm of the other; strictly decreases under every ass step."""
    return _stars_and_measure(m)[1]


# -------------------------------------------------------------- joinability


def joinable(
    m: Comp,
    n: Comp,
    fuel: int = 200,
    rules: frozenset[Rule] | set[Rule] = DEFAULT_RULES,
) -> Optional[Comp]:
    """Search for a common reduct of m and n.

    Fast path: leftmost-outermost normalization of both sides.  Fallback:
    breadth-first expansion of both reachable sets (visited modulo alpha)
    within the step budget.  None means inconclusive, not non-joinable.
    """
    if alpha_key(m) == alpha_key(n):
        return m
    fast = min(fuel, 80)
    nm = normalize(m, rules, fast)
    nn = normalize(n, rules, fast)
    if nm.normal_form and nn.normal_form and alpha_key(nm.term) == alpha_key(nn.term):
        return nm.term

    seen_m: dict[tuple, Comp] = {alpha_key(m): m}
    seen_n: dict[tuple, Comp] = {alpha_key(n): n}
    frontier_m = [m]
    frontier_n = [n]
    budget = fuel
    while budget > 0 and (frontier_m or frontier_n):
        for seen, other, frontier in ((seen_m, seen_n, frontier_m), (seen_n, seen_m, frontier_n)):
            nxt: list[Comp] = []
            for term in frontier:
                for step in enumerate_steps(term, rules):
                    budget -= 1
                    k = alpha_key(step.result)
                    if k in other:
                        return step.result
                    if k not in seen:
                        seen[k] = step.result
                        nxt.append(step.result)
                if budget <= 0:
                    break
            frontier[:] = nxt
            if budget <= 0:
                break
        common = set(seen_m) & set(seen_n)
        if common:
            return seen_m[next(iter(common))]
    common = set(seen_m) & set(seen_n)
    if common:
        return seen_m[next(iter(common))]
    return None
