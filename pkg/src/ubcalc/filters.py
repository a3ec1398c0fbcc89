"""Finite-rank filter domains over canonical intersection types.

In a finite type lattice every filter is principal, so a domain element
is represented by its generating type; the domain order is the reverse
of the subtype order (stronger type = higher element, the omega class is
bottom).  The value side of rank n is the meet-closed lattice of value
classes of rank <= n; the computation side is the top class plus ``T``
of every value class of rank <= n-1.

Bind and application act on generators by collecting the codomains of
the arrow parts whose domains dominate the argument; abstraction builds
the meet of one arrow per sampled argument point.  Interpretation of a
term at rank n samples abstraction arguments from the rank n-1 value
lattice and truncates unit results into rank n.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .terms import Bind, Comp, Lambda, Unit, Value, Variable, free_vars
from .typesys import (
    TOP_C,
    TOP_V,
    AtomTable,
    CanonC,
    CanonV,
    EMPTY_TABLE,
    _key_c,
    _key_v,
    canon_rank_c,
    canon_rank_v,
    leq_canon_c,
    leq_canon_v,
    meet_all_canon_c,
    meet_canon_v,
    tcan,
)


class DomainSizeError(RuntimeError):
    """The requested rank/table combination has an intractably large lattice."""


@dataclass(frozen=True, slots=True)
class ValFilt:
    gen: CanonV


@dataclass(frozen=True, slots=True)
class ComFilt:
    gen: CanonC


BOTTOM_V = ValFilt(TOP_V)
BOTTOM_C = ComFilt(TOP_C)


def dom_leq_v(a: ValFilt, b: ValFilt, table: AtomTable = EMPTY_TABLE) -> bool:
    """Domain order: a below b iff b's generator is the stronger type."""
    return leq_canon_v(b.gen, a.gen, table)


def dom_leq_c(a: ComFilt, b: ComFilt, table: AtomTable = EMPTY_TABLE) -> bool:
    return leq_canon_c(b.gen, a.gen, table)


# --------------------------------------------------------- rank lattices


def _meet_closure(gens: list[CanonV], table: AtomTable, cap: int) -> list[CanonV]:
    seen: dict[tuple, CanonV] = {_key_v(TOP_V): TOP_V}
    for g in gens:
        seen.setdefault(_key_v(g), g)
    frontier = list(seen.values())
    while frontier:
        new: list[CanonV] = []
        for x in frontier:
            for y in list(seen.values()):
                m = meet_canon_v(x, y, table)
                k = _key_v(m)
                if k not in seen:
                    seen[k] = m
                    new.append(m)
                    if len(seen) > cap:
                        raise DomainSizeError(
                            f"value lattice exceeds {cap} points; use a smaller rank or table"
                        )
        frontier = new
    return sorted(seen.values(), key=_key_v)


@lru_cache(maxsize=None)
def value_lattice(n: int, table: AtomTable = EMPTY_TABLE, cap: int = 5000) -> tuple[CanonV, ...]:
    """All value classes of rank <= n, meet-closed (the rank-n value lattice)."""
    if n < 0:
        raise ValueError("rank must be non-negative")
    atoms = [CanonV((a,), ()) for a in table.atoms]
    points = _meet_closure(atoms, table, cap)
    for _ in range(n):
        comps = [tcan(v) for v in points]
        arrows = [CanonV((), ((d, c),)) for d in points for c in comps]
        points = _meet_closure(atoms + arrows, table, cap)
    return tuple(points)


@lru_cache(maxsize=None)
def comp_lattice(n: int, table: AtomTable = EMPTY_TABLE, cap: int = 5000) -> tuple[CanonC, ...]:
    """All computation classes of rank <= n: top plus T of rank n-1 values."""
    if n == 0:
        return (TOP_C,)
    return (TOP_C,) + tuple(tcan(v) for v in value_lattice(n - 1, table, cap))


@dataclass(frozen=True)
class RankDomain:
    n: int
    table: AtomTable
    values: tuple[CanonV, ...]
    comps: tuple[CanonC, ...]

    def value_elems(self) -> list[ValFilt]:
        return [ValFilt(v) for v in self.values]

    def comp_elems(self) -> list[ComFilt]:
        return [ComFilt(c) for c in self.comps]


def build_domain(n: int, table: AtomTable = EMPTY_TABLE, cap: int = 5000) -> RankDomain:
    values = value_lattice(n, table, cap)
    comps = comp_lattice(n, table, cap)
    return RankDomain(n, table, values, comps)


# ------------------------------------------------------- monad operations


def unit_f(d: ValFilt) -> ComFilt:
    """Coerce a value element into the trivial computation on it."""
    return ComFilt(tcan(d.gen))


def bind_f(t: ComFilt, e: ValFilt, table: AtomTable = EMPTY_TABLE) -> ComFilt:
    """Feed t's result to function-value e.

    The generator collects the codomains of e's arrow parts whose domain
    is implied by t's content; a bottom t or a part-free e yields bottom.
    """
    a = t.gen.arg
    if a is None:
        return BOTTOM_C
    return ComFilt(
        meet_all_canon_c(
            (c for d, c in e.gen.arrows if leq_canon_v(a, d, table)), table
        )
    )


def apply_f(u: ValFilt, d: ValFilt, table: AtomTable = EMPTY_TABLE) -> ComFilt:
    return ComFilt(
        meet_all_canon_c(
            (c for dd, c in u.gen.arrows if leq_canon_v(d.gen, dd, table)), table
        )
    )


def unit_as_function(points: Iterable[CanonV], table: AtomTable = EMPTY_TABLE) -> ValFilt:
    """The element representing the unit operation over the given points."""
    return psi_f({p: ComFilt(tcan(p)) for p in points}, table)


class NonMonotoneTableError(ValueError):
    pass


def psi_f(fn_table: dict[CanonV, ComFilt], table: AtomTable = EMPTY_TABLE) -> ValFilt:
    """Fold a finite monotone point-to-computation table into a value element."""
    points = list(fn_table)
    for a in points:
        for b in points:
            if leq_canon_v(b, a, table):  # up(a) below up(b) in the domain order
                if not leq_canon_c(fn_table[b].gen, fn_table[a].gen, table):
                    raise NonMonotoneTableError(f"table not monotone at {a} vs {b}")
    arrows = [(p, fn_table[p].gen) for p in points]
    from .typesys import _make_canon_v

    return ValFilt(_make_canon_v((), arrows, table))


def phi_f(u: ValFilt, points: Iterable[CanonV], table: AtomTable = EMPTY_TABLE) -> dict[CanonV, ComFilt]:
    """Read a value element back as a table on the given argument points."""
    return {p: apply_f(u, ValFilt(p), table) for p in points}


# --------------------------------------------- embedding-projection pairs


def embed(d: ValFilt) -> ValFilt:
    # the generator survives unchanged; only the ambient closure grows
    return d


def project_val(e: ValFilt, n: int, table: AtomTable = EMPTY_TABLE) -> ValFilt:
    """Strongest rank-n consequence of e's generator."""
    acc = TOP_V
    for v in value_lattice(n, table):
        if leq_canon_v(e.gen, v, table):
            acc = meet_canon_v(acc, v, table)
    return ValFilt(acc)


def project_comp(t: ComFilt, n: int, table: AtomTable = EMPTY_TABLE) -> ComFilt:
    if t.gen.arg is None:
        return BOTTOM_C
    if n == 0:
        return BOTTOM_C
    return ComFilt(tcan(project_val(ValFilt(t.gen.arg), n - 1, table).gen))


# ------------------------------------------------------- interpretation


class OpenVariableError(KeyError):
    pass


EnvN = dict[str, ValFilt]


def interp_value(v: Value, env: EnvN, n: int, table: AtomTable = EMPTY_TABLE) -> ValFilt:
    match v:
        case Variable(name):
            try:
                return env[name]
            except KeyError:
                raise OpenVariableError(name) from None
        case Lambda(x, body):
            if n == 0:
                return BOTTOM_V
            arrows = []
            for point in value_lattice(n - 1, table):
                out = interp_comp(body, {**env, x: ValFilt(point)}, n, table)
                arrows.append((point, out.gen))
            from .typesys import _make_canon_v

            return ValFilt(_make_canon_v((), arrows, table))
    raise TypeError(f"not a value: {v!r}")


def interp_comp(m: Comp, env: EnvN, n: int, table: AtomTable = EMPTY_TABLE) -> ComFilt:
    match m:
        case Unit(v):
            d = interp_value(v, env, n, table)
            if n == 0:
                return BOTTOM_C
            return ComFilt(tcan(project_val(d, n - 1, table).gen))
        case Bind(left, right):
            t = interp_comp(left, env, n, table)
            e = interp_value(right, env, n, table)
            return bind_f(t, e, table)
    raise TypeError(f"not a computation: {m!r}")


def interp_closed(m: Comp, n: int, table: AtomTable = EMPTY_TABLE) -> ComFilt:
    if free_vars(m):
        raise OpenVariableError(sorted(free_vars(m))[0])
    return interp_comp(m, {}, n, table)


# ----------------------------------------------------------- type meaning


class RankOverflowError(ValueError):
    pass


def type_elems(sigma: CanonV | CanonC, dom: RankDomain) -> list:
    """All domain elements whose generator entails sigma."""
    if isinstance(sigma, CanonV):
        if canon_rank_v(sigma) > dom.n:
            raise RankOverflowError(f"rank {canon_rank_v(sigma)} exceeds domain rank {dom.n}")
        return [ValFilt(v) for v in dom.values if leq_canon_v(v, sigma, dom.table)]
    if canon_rank_c(sigma) > dom.n:
        raise RankOverflowError(f"rank {canon_rank_c(sigma)} exceeds domain rank {dom.n}")
    return [ComFilt(c) for c in dom.comps if leq_canon_c(c, sigma, dom.table)]


# ------------------------------------------------------- table enumeration


def monotone_tables(
    dom_points: list[CanonV],
    cod_points: list[CanonC],
    table: AtomTable = EMPTY_TABLE,
    cap: Optional[int] = None,
) -> Iterator[dict[CanonV, ComFilt]]:
    """All monotone tables from the value points to the computation points.

    Yields at most `cap` tables when given; iteration order is
    deterministic.
    """
    points = sorted(dom_points, key=_key_v)
    # linear extension of the domain order: up(p) is low when p is weak,
    # i.e. entails few other generators
    order = sorted(points, key=lambda p: (sum(1 for q in points if leq_canon_v(p, q, table)), _key_v(p)))
    preds: list[list[int]] = []
    for i, p in enumerate(order):
        preds.append([j for j in range(i) if leq_canon_v(p, order[j], table)])
    cods = sorted(cod_points, key=_key_c)
    count = 0
    assignment: list[CanonC] = []

    def rec(i: int) -> Iterator[dict[CanonV, ComFilt]]:
        nonlocal count
        if cap is not None and count >= cap:
            return
        if i == len(order):
            count += 1
            yield {order[k]: ComFilt(assignment[k]) for k in range(len(order))}
            return
        for c in cods:
            # image must dominate the images of all lower points
            if all(leq_canon_c(c, assignment[j], table) for j in preds[i]):
                assignment.append(c)
                yield from rec(i + 1)
                assignment.pop()

    yield from rec(0)
