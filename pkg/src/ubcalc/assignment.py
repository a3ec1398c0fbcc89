"""Type assignment for the unit/bind calculus.

Judgments assign value types to values and computation types to
computations over a finite basis.  Derivations are explicit trees with
rules Ax, ArrowI, UnitI, ArrowE, Omega, InterI and Leq, checkable node
by node.  On top of the checker sit generation-lemma inversion, bounded
inference relative to a finite type universe, derivation synthesis, and
the constructive transformations carrying a derivation forward along a
reduction step (subject reduction) or backward (subject expansion).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .terms import (
    Bind,
    Comp,
    Lambda,
    Term,
    Unit,
    Value,
    Variable,
    free_vars,
    is_value,
    unshadow,
)
from .typesys import (
    AnyType,
    AtomTable,
    C_OMEGA,
    CanonC,
    CanonV,
    ComType,
    CTf,
    CInter,
    COmega,
    EMPTY_TABLE,
    TOP_C,
    TOP_V,
    ValType,
    VArrow,
    VInter,
    VOmega,
    is_vtype,
    leq_c,
    leq_canon_c,
    leq_canon_v,
    leq_v,
    meet_all_canon_c,
    normalize_ctype,
    normalize_vtype,
    print_type,
    tcan,
    to_ctype,
    to_vtype,
    vinter_all,
)

# ------------------------------------------------------------------- bases

Basis = tuple[tuple[str, ValType], ...]

AX, ARROW_I, UNIT_I, ARROW_E, OMEGA, INTER_I, LEQ = (
    "Ax",
    "ArrowI",
    "UnitI",
    "ArrowE",
    "Omega",
    "InterI",
    "Leq",
)


def make_basis(bindings: Iterable[tuple[str, ValType]] = ()) -> Basis:
    items = sorted(dict(bindings).items())
    return tuple(items)


def basis_get(basis: Basis, x: str) -> ValType:
    for name, t in basis:
        if name == x:
            return t
    return VOmega()


def basis_dom(basis: Basis) -> frozenset[str]:
    return frozenset(name for name, _ in basis)


def basis_extend(basis: Basis, x: str, t: ValType) -> Basis:
    return make_basis(list(basis) + [(x, t)])


def basis_remove(basis: Basis, x: str) -> Basis:
    return tuple((n, t) for n, t in basis if n != x)


def basis_meet(a: Basis, b: Basis) -> Basis:
    """Pointwise intersection of two bases."""
    out: dict[str, ValType] = dict(a)
    for name, t in b:
        out[name] = VInter(out[name], t) if name in out else t
    return make_basis(out.items())


# -------------------------------------------------------------- derivations


@dataclass(frozen=True)
class Judgment:
    basis: Basis
    subject: Term
    tipo: AnyType


@dataclass(frozen=True)
class Derivation:
    rule: str
    conclusion: Judgment
    premises: tuple["Derivation", ...] = ()
    side: Optional[tuple[AnyType, AnyType]] = None


@dataclass
class CheckReport:
    valid: bool
    errors: list[tuple[tuple[int, ...], str]] = field(default_factory=list)


def _node_errors(d: Derivation, table: AtomTable) -> list[str]:
    J = d.conclusion
    subj, t = J.subject, J.tipo
    errs: list[str] = []
    if is_value(subj) != is_vtype(t):
        return [f"sort mismatch between subject and type in {d.rule}"]
    prem = d.premises
    match d.rule:
        case "Ax":
            if prem:
                errs.append("Ax takes no premises")
            if not isinstance(subj, Variable):
                errs.append("Ax subject must be a variable")
            elif (subj.name, t) not in J.basis:
                errs.append(f"binding {subj.name}:{print_type(t)} not in basis")
        case "Omega":
            if prem:
                errs.append("Omega takes no premises")
            if not isinstance(t, (VOmega, COmega)):
                errs.append("Omega concludes the top type")
        case "ArrowI":
            if not (isinstance(subj, Lambda) and isinstance(t, VArrow)):
                errs.append("ArrowI needs an abstraction subject and arrow type")
            elif len(prem) != 1:
                errs.append("ArrowI takes one premise")
            else:
                p = prem[0].conclusion
                if subj.binder in basis_dom(J.basis):
                    errs.append(f"basis clash on {subj.binder}")
                if p.basis != basis_extend(J.basis, subj.binder, t.dom):
                    errs.append("premise basis is not the conclusion basis extended with the binder")
                if p.subject != subj.body:
                    errs.append("premise subject is not the abstraction body")
                if p.tipo != t.cod:
                    errs.append("premise type is not the arrow codomain")
        case "UnitI":
            if not (isinstance(subj, Unit) and isinstance(t, CTf)):
                errs.append("UnitI needs a unit subject and a T type")
            elif len(prem) != 1:
                errs.append("UnitI takes one premise")
            else:
                p = prem[0].conclusion
                if p.basis != J.basis or p.subject != subj.value or p.tipo != t.arg:
                    errs.append("UnitI premise must type the wrapped value at the T argument")
        case "ArrowE":
            if not isinstance(subj, Bind):
                errs.append("ArrowE subject must be a bind")
            elif len(prem) != 2:
                errs.append("ArrowE takes two premises")
            else:
                pm, pv = prem[0].conclusion, prem[1].conclusion
                if pm.basis != J.basis or pv.basis != J.basis:
                    errs.append("ArrowE premises must share the conclusion basis")
                if pm.subject != subj.left or pv.subject != subj.right:
                    errs.append("ArrowE premises must type the bind operands")
                if not isinstance(pm.tipo, CTf) or not isinstance(pv.tipo, VArrow):
                    errs.append("ArrowE premises need a T type and an arrow type")
                else:
                    if pv.tipo.cod != t:
                        errs.append("conclusion type is not the arrow codomain")
                    if not leq_v(pm.tipo.arg, pv.tipo.dom, table):
                        errs.append(
                            f"content {print_type(pm.tipo.arg)} does not entail the "
                            f"argument type {print_type(pv.tipo.dom)}"
                        )
        case "InterI":
            if not isinstance(t, (VInter, CInter)):
                errs.append("InterI concludes an intersection")
            elif len(prem) != 2:
                errs.append("InterI takes two premises")
            else:
                pl, pr = prem[0].conclusion, prem[1].conclusion
                if pl.basis != J.basis or pr.basis != J.basis or pl.subject != subj or pr.subject != subj:
                    errs.append("InterI premises must share basis and subject")
                if pl.tipo != t.left or pr.tipo != t.right:
                    errs.append("InterI premises must match the intersection components")
        case "Leq":
            if len(prem) != 1:
                errs.append("Leq takes one premise")
            elif d.side is None:
                errs.append("Leq needs a subtyping witness")
            else:
                p = prem[0].conclusion
                lo, hi = d.side
                if p.basis != J.basis or p.subject != subj:
                    errs.append("Leq premise must share basis and subject")
                if p.tipo != lo or t != hi:
                    errs.append("Leq witness must connect premise and conclusion types")
                else:
                    ok = leq_v(lo, hi, table) if is_vtype(lo) else leq_c(lo, hi, table)
                    if not ok:
                        errs.append(
                            f"subtyping side condition fails: "
                            f"{print_type(lo)} <= {print_type(hi)}"
                        )
        case _:
            errs.append(f"unknown rule {d.rule!r}")
    return errs


def check_derivation(d: Derivation, table: AtomTable = EMPTY_TABLE) -> CheckReport:
    report = CheckReport(True)

    def walk(node: Derivation, path: tuple[int, ...]) -> None:
        for msg in _node_errors(node, table):
            report.valid = False
            report.errors.append((path, msg))
        for i, p in enumerate(node.premises):
            walk(p, path + (i,))

    walk(d, ())
    return report


# --------------------------------------------------------- node constructors


def ax(basis: Basis, x: str) -> Derivation:
    return Derivation(AX, Judgment(basis, Variable(x), basis_get(basis, x)))


def omega_node(basis: Basis, subject: Term) -> Derivation:
    t: AnyType = VOmega() if is_value(subject) else COmega()
    return Derivation(OMEGA, Judgment(basis, subject, t))


def leq_node(premise: Derivation, target: AnyType) -> Derivation:
    J = premise.conclusion
    if J.tipo == target:
        return premise
    return Derivation(
        LEQ, Judgment(J.basis, J.subject, target), (premise,), (J.tipo, target)
    )


def inter_fold(nodes: Sequence[Derivation]) -> Derivation:
    assert nodes
    acc = nodes[0]
    for n in nodes[1:]:
        J = acc.conclusion
        t = (VInter if is_vtype(J.tipo) else CInter)(J.tipo, n.conclusion.tipo)
        acc = Derivation(INTER_I, Judgment(J.basis, J.subject, t), (acc, n))
    return acc


def unit_node(premise: Derivation) -> Derivation:
    J = premise.conclusion
    return Derivation(
        UNIT_I, Judgment(J.basis, Unit(J.subject), CTf(J.tipo)), (premise,)
    )


def arrow_i_node(premise: Derivation, binder: str) -> Derivation:
    J = premise.conclusion
    dom = basis_get(J.basis, binder)
    return Derivation(
        ARROW_I,
        Judgment(basis_remove(J.basis, binder), Lambda(binder, J.subject), VArrow(dom, J.tipo)),
        (premise,),
    )


def arrow_e_node(comp_premise: Derivation, value_premise: Derivation) -> Derivation:
    jm, jv = comp_premise.conclusion, value_premise.conclusion
    assert isinstance(jv.tipo, VArrow)
    return Derivation(
        ARROW_E,
        Judgment(jm.basis, Bind(jm.subject, jv.subject), jv.tipo.cod),
        (comp_premise, value_premise),
    )


# ---------------------------------------------------------- bounded inference


def _canon_basis(basis: Basis, table: AtomTable) -> tuple[tuple[str, CanonV], ...]:
    return tuple((x, normalize_vtype(t, table)) for x, t in basis)


def minimal_value(
    v: Value,
    basis: dict[str, CanonV],
    universe: Sequence[CanonV],
    table: AtomTable = EMPTY_TABLE,
) -> CanonV:
    """Strongest derivable value type with abstraction arguments drawn
    from the universe (complete relative to the universe only)."""
    match v:
        case Variable(name):
            return basis.get(name, TOP_V)
        case Lambda(x, body):
            arrows = []
            for point in universe:
                out = minimal_comp(body, {**basis, x: point}, universe, table)
                arrows.append((point, out))
            from .typesys import _make_canon_v

            return _make_canon_v((), arrows, table)
    raise TypeError(f"not a value: {v!r}")


def minimal_comp(
    m: Comp,
    basis: dict[str, CanonV],
    universe: Sequence[CanonV],
    table: AtomTable = EMPTY_TABLE,
) -> CanonC:
    match m:
        case Unit(v):
            return tcan(minimal_value(v, basis, universe, table))
        case Bind(left, right):
            t = minimal_comp(left, basis, universe, table)
            if t.arg is None:
                return TOP_C
            e = minimal_value(right, basis, universe, table)
            return meet_all_canon_c(
                (c for d, c in e.arrows if leq_canon_v(t.arg, d, table)), table
            )
    raise TypeError(f"not a computation: {m!r}")


def infer_bounded(
    basis: Basis,
    subject: Term,
    universe: tuple[Sequence[CanonV], Sequence[CanonC]],
    table: AtomTable = EMPTY_TABLE,
) -> list[CanonV] | list[CanonC]:
    """All universe classes derivable for the subject, the top class always
    included; complete relative to derivations whose abstraction argument
    types come from the universe."""
    uvals, ucomps = universe
    cb = dict(_canon_basis(basis, table))
    if is_value(subject):
        low = minimal_value(subject, cb, uvals, table)
        return [u for u in uvals if leq_canon_v(low, u, table)]
    low = minimal_comp(subject, cb, uvals, table)
    return [u for u in ucomps if leq_canon_c(low, u, table)]


def typable_nontrivial(
    m: Comp,
    universe: tuple[Sequence[CanonV], Sequence[CanonC]],
    table: AtomTable = EMPTY_TABLE,
) -> Optional[ComType]:
    """A non-trivial computation type for a closed m, or None if the
    bounded search finds only the top class (inconclusive)."""
    if free_vars(m):
        raise ValueError("typable_nontrivial expects a closed computation")
    low = minimal_comp(m, {}, universe[0], table)
    if low.arg is None:
        return None
    return to_ctype(low)


# ------------------------------------------------------- generation lemma


@dataclass(frozen=True)
class ObligationSet:
    """One disjunct of the generation lemma: judgments to establish plus
    subtype side conditions."""

    judgments: tuple[Judgment, ...]
    sides: tuple[tuple[AnyType, AnyType], ...]


def invert(
    basis: Basis,
    subject: Term,
    sigma: AnyType,
    universe: tuple[Sequence[CanonV], Sequence[CanonC]] | None = None,
    table: AtomTable = EMPTY_TABLE,
) -> list[ObligationSet]:
    """Premise obligations for a judgment, one ObligationSet per disjunct.

    A trivial sigma yields the empty obligation.  For binds, the
    existential content type ranges over the universe's value classes.
    """
    trivial = (
        leq_v(VOmega(), sigma, table) if is_vtype(sigma) else leq_c(COmega(), sigma, table)
    )
    if trivial:
        return [ObligationSet((), ())]
    match subject:
        case Variable(name):
            lo = basis_get(basis, name)
            ok = leq_v(lo, sigma, table)
            return [ObligationSet((), (((lo, sigma)),))] if ok else []
        case Lambda(x, body):
            canon = normalize_vtype(sigma, table)
            if canon.atoms:
                return []
            judgments = tuple(
                Judgment(basis_extend(basis, x, to_vtype(d)), body, to_ctype(c))
                for d, c in canon.arrows
            )
            family = vinter_all([VArrow(to_vtype(d), to_ctype(c)) for d, c in canon.arrows])
            return [ObligationSet(judgments, ((family, sigma),))]
        case Unit(v):
            canon = normalize_ctype(sigma, table)
            if canon.arg is None:
                return [ObligationSet((), ())]
            w = to_vtype(canon.arg)
            return [ObligationSet((Judgment(basis, v, w),), ((CTf(w), sigma),))]
        case Bind(left, right):
            if universe is None:
                raise ValueError("bind inversion needs a universe for the content type")
            out = []
            for d in universe[0]:
                dd = to_vtype(d)
                out.append(
                    ObligationSet(
                        (
                            Judgment(basis, left, CTf(dd)),
                            Judgment(basis, right, VArrow(dd, sigma)),
                        ),
                        (),
                    )
                )
            return out
    raise TypeError(f"not a term: {subject!r}")


# ------------------------------------------------------------ synthesis


class Unsynthesizable(ValueError):
    pass


def synth_derivation(
    basis: Basis,
    subject: Term,
    target: AnyType,
    universe: Sequence[CanonV],
    table: AtomTable = EMPTY_TABLE,
) -> Derivation:
    """Build a checkable derivation of basis |- subject : target, with
    abstraction argument types drawn from the universe.  Shadowed binders
    are alpha-renamed away (the rules cannot type them as written), so
    the returned subject is alpha-equivalent to the request.  Raises
    Unsynthesizable when the bounded minimal type does not entail the
    target."""
    cb = dict(_canon_basis(basis, table))
    subject = unshadow(subject, basis_dom(basis))
    return _synth(basis, cb, subject, target, universe, table)


def _trivial(t: AnyType, table: AtomTable) -> bool:
    return leq_v(VOmega(), t, table) if is_vtype(t) else leq_c(COmega(), t, table)


def _synth(
    basis: Basis,
    cb: dict[str, CanonV],
    subject: Term,
    target: AnyType,
    universe: Sequence[CanonV],
    table: AtomTable,
) -> Derivation:
    if _trivial(target, table):
        return leq_node(omega_node(basis, subject), target)
    match subject:
        case Variable(name):
            if name not in basis_dom(basis):
                raise Unsynthesizable(f"open variable {name}")
            if not leq_v(basis_get(basis, name), target, table):
                raise Unsynthesizable(f"{name} not typable at {print_type(target)}")
            return leq_node(ax(basis, name), target)
        case Lambda(x, body):
            if not leq_canon_v(minimal_value(subject, cb, universe, table),
                               normalize_vtype(target, table), table):
                raise Unsynthesizable(f"abstraction not typable at {print_type(target)}")
            canon = normalize_vtype(target, table)
            if canon.atoms:
                raise Unsynthesizable("abstractions have no atomic types")
            nodes = []
            for d, _ in canon.arrows:
                for point in universe:
                    if not leq_canon_v(d, point, table):
                        continue
                    out = minimal_comp(body, {**cb, x: point}, universe, table)
                    sub = _synth(
                        basis_extend(basis, x, to_vtype(point)),
                        {**cb, x: point},
                        body,
                        to_ctype(out),
                        universe,
                        table,
                    )
                    nodes.append(arrow_i_node(sub, x))
            return leq_node(inter_fold(nodes), target)
        case Unit(v):
            low = minimal_value(v, cb, universe, table)
            if not leq_c(CTf(to_vtype(low)), target, table):
                raise Unsynthesizable(f"unit not typable at {print_type(target)}")
            sub = _synth(basis, cb, v, to_vtype(low), universe, table)
            return leq_node(unit_node(sub), target)
        case Bind(left, right):
            t = minimal_comp(left, cb, universe, table)
            if t.arg is None:
                raise Unsynthesizable("left operand has no non-trivial type")
            e = minimal_value(right, cb, universe, table)
            out = meet_all_canon_c(
                (c for d, c in e.arrows if leq_canon_v(t.arg, d, table)), table
            )
            if not leq_c(to_ctype(out), target, table):
                raise Unsynthesizable(f"bind not typable at {print_type(target)}")
            arg_ast = to_vtype(t.arg)
            dm = _synth(basis, cb, left, CTf(arg_ast), universe, table)
            dv = _synth(basis, cb, right, VArrow(arg_ast, to_ctype(out)), universe, table)
            return leq_node(arrow_e_node(dm, dv), target)
    raise TypeError(f"not a term: {subject!r}")
