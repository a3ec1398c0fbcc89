import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ubcalc.typesys import (
    AtomTable,
    C_OMEGA,
    CInter,
    CTf,
    EMPTY_TABLE,
    TOP_C,
    TOP_V,
    UnknownAtomError,
    V_OMEGA,
    VArrow,
    VAtom,
    VInter,
    brute_subtype_oracle,
    enumerate_types,
    eq_c,
    eq_v,
    leq_c,
    leq_v,
    normalize_ctype,
    normalize_vtype,
    parse_type,
    print_type,
    rank,
    to_ctype,
    to_vtype,
)

T1 = AtomTable(("a",))
T2 = AtomTable(("a", "b"))
T2C = AtomTable(("a", "b"), frozenset({("a", "b")}))

ARROW_TOP = VArrow(V_OMEGA, C_OMEGA)


def vtypes(depth, table=EMPTY_TABLE):
    base = [st.just(V_OMEGA)]
    if table.atoms:
        base.append(st.sampled_from(table.atoms).map(VAtom))
    if depth <= 0:
        return st.one_of(*base)
    return st.one_of(
        *base,
        st.builds(VArrow, vtypes(depth - 1, table), ctypes(depth - 1, table)),
        st.builds(VInter, vtypes(depth - 1, table), vtypes(depth - 1, table)),
    )


def ctypes(depth, table=EMPTY_TABLE):
    if depth <= 0:
        return st.just(C_OMEGA)
    return st.one_of(
        st.just(C_OMEGA),
        st.builds(CTf, vtypes(depth - 1, table)),
        st.builds(CInter, ctypes(depth - 1, table), ctypes(depth - 1, table)),
    )


class TestRank:
    @pytest.mark.parametrize(
        "src,expected",
        [("Wv", 0), ("Wc", 0), ("T Wv", 1), ("Wv -> T Wv", 1), ("(Wv -> Wc) -> T Wv", 2)],
    )
    def test_cases(self, src, expected):
        assert rank(parse_type(src)) == expected

    def test_atoms_rank_zero(self):
        assert rank(VAtom("a")) == 0

    def test_meet_takes_max(self):
        assert rank(parse_type("Wv & (Wv -> T Wv)")) == 1


class TestNormalize:
    def test_omega_arrow_absorbed(self):
        assert normalize_vtype(ARROW_TOP) == TOP_V

    def test_arrow_with_trivial_codomain_absorbed(self):
        # derivation-search oracle confirms both directions
        t = VArrow(parse_type("Wv -> T Wv"), C_OMEGA)
        assert normalize_vtype(t) == TOP_V
        assert brute_subtype_oracle(t, V_OMEGA) is True
        assert brute_subtype_oracle(V_OMEGA, t) is True

    def test_t_intersections_merge(self):
        got = normalize_ctype(parse_type("T Wv & T (Wv -> T Wv)"))
        want = normalize_ctype(CTf(parse_type("Wv & (Wv -> T Wv)")))
        assert got == want

    @given(vtypes(3))
    def test_idempotent_value(self, t):
        c = normalize_vtype(t)
        assert normalize_vtype(to_vtype(c)) == c

    @given(vtypes(3))
    def test_eq_preserving(self, t):
        assert eq_v(t, to_vtype(normalize_vtype(t)))

    @given(ctypes(3))
    def test_comp_shape(self, t):
        c = normalize_ctype(t)
        assert c.is_top or c.arg is not None
        assert eq_c(t, to_ctype(c))


class TestTheoryAxioms:
    def test_top_axioms(self):
        assert leq_v(parse_type("Wv -> T Wv"), V_OMEGA)
        assert leq_c(parse_type("T Wv"), C_OMEGA)

    def test_omega_equals_omega_arrow(self):
        assert eq_v(V_OMEGA, ARROW_TOP)

    def test_distribution(self):
        lhs = parse_type("(Wv -> T Wv) & (Wv -> T (Wv -> T Wv))")
        rhs = parse_type("Wv -> (T Wv & T (Wv -> T Wv))")
        assert eq_v(lhs, rhs)

    def test_arrow_variance(self):
        small = parse_type("Wv -> T (Wv -> T Wv)")
        big = parse_type("(Wv -> T Wv) -> T Wv")
        # domain shrinks, codomain grows
        assert leq_v(small, VArrow(parse_type("Wv -> T Wv"), CTf(V_OMEGA)))
        assert not leq_v(big, small)

    def test_t_covariance(self):
        assert leq_c(parse_type("T (Wv -> T Wv)"), parse_type("T Wv"))

    def test_omega_c_not_below_t_top(self):
        assert not leq_c(C_OMEGA, parse_type("T Wv"))
        assert leq_c(parse_type("T Wv"), C_OMEGA)

    def test_nontrivial_comp_below_t_top(self):
        # every non-top computation class sits below T of the value top
        for c in enumerate_types(2, 2)[1]:
            if not c.is_top:
                assert leq_c(to_ctype(c), parse_type("T Wv"))

    def test_atom_table_order(self):
        assert leq_v(VAtom("a"), VAtom("b"), T2C)
        assert not leq_v(VAtom("b"), VAtom("a"), T2C)
        assert not leq_v(VAtom("a"), VAtom("b"), T2)

    def test_unknown_atom_rejected(self):
        with pytest.raises(UnknownAtomError):
            leq_v(VAtom("zz"), V_OMEGA, T1)

    @given(vtypes(2, T2), vtypes(2, T2), vtypes(2, T2))
    @settings(max_examples=60)
    def test_preorder_and_meet_laws(self, a, b, c):
        assert leq_v(a, a, T2)
        m = VInter(a, b)
        assert leq_v(m, a, T2) and leq_v(m, b, T2)
        if leq_v(c, a, T2) and leq_v(c, b, T2):
            assert leq_v(c, m, T2)
        if leq_v(a, b, T2) and leq_v(b, c, T2):
            assert leq_v(a, c, T2)


class TestEq:
    def test_mandatory_equalities(self):
        assert eq_v(V_OMEGA, ARROW_TOP)
        assert eq_c(
            parse_type("T Wv & T (Wv -> T Wv)"),
            CTf(parse_type("Wv & (Wv -> T Wv)")),
        )
        assert not eq_c(parse_type("T Wv"), C_OMEGA)


class TestEnumerate:
    def test_rank0_empty(self):
        vals, comps = enumerate_types(0, 2)
        assert vals == [TOP_V] and comps == [TOP_C]

    def test_rank1_width1_contains_arrow_class(self):
        vals, _ = enumerate_types(1, 1)
        assert any(eq_v(to_vtype(v), parse_type("Wv -> T Wv")) for v in vals)

    def test_rank2_empty_counts(self):
        vals, comps = enumerate_types(2, 2)
        assert len(vals) == 6 and len(comps) == 3

    def test_each_class_once(self):
        vals, _ = enumerate_types(2, 1, T1)
        for a, b in itertools.combinations(vals, 2):
            assert not eq_v(to_vtype(a), to_vtype(b), T1)
        vals, _ = enumerate_types(1, 2, T2)
        for a, b in itertools.combinations(vals, 2):
            assert not eq_v(to_vtype(a), to_vtype(b), T2)

    def test_closed_under_normalize(self):
        vals, comps = enumerate_types(2, 2)
        for v in vals:
            assert normalize_vtype(to_vtype(v)) == v
        for c in comps:
            assert normalize_ctype(to_ctype(c)) == c


class TestOracle:
    def test_omega_axiom_instances(self):
        assert brute_subtype_oracle(V_OMEGA, ARROW_TOP, 2) is True
        assert brute_subtype_oracle(ARROW_TOP, V_OMEGA, 2) is True

    def test_refutes_omega_below_t(self):
        assert brute_subtype_oracle(C_OMEGA, parse_type("T Wv")) is False

    def test_reflexivity(self):
        t = parse_type("(Wv -> T Wv) & @a")
        assert brute_subtype_oracle(t, t, 50, T1) is True

    @given(vtypes(3, T2), vtypes(3, T2))
    @settings(max_examples=150)
    def test_decider_agreement_values(self, a, b):
        want = brute_subtype_oracle(a, b, 200, T2)
        if want is not None:
            assert leq_v(a, b, T2) == want

    @given(ctypes(3, T2C), ctypes(3, T2C))
    @settings(max_examples=150)
    def test_decider_agreement_comps(self, a, b):
        want = brute_subtype_oracle(a, b, 200, T2C)
        if want is not None:
            assert leq_c(a, b, T2C) == want


class TestEtaModes:
    def test_scott_axiom_soundness_direction(self):
        table = AtomTable(("a",), eta_mode="scott", eta_depth=1)
        alpha = VAtom("a")
        unfolded = VArrow(V_OMEGA, CTf(alpha))
        assert leq_v(alpha, unfolded, table)
        assert leq_v(unfolded, alpha, table)

    def test_park_axiom_soundness_direction(self):
        table = AtomTable(("a",), eta_mode="park", eta_depth=1)
        alpha = VAtom("a")
        unfolded = VArrow(alpha, CTf(alpha))
        assert leq_v(alpha, unfolded, table)
        assert leq_v(unfolded, alpha, table)

    def test_plain_mode_keeps_atoms_opaque(self):
        alpha = VAtom("a")
        assert not leq_v(alpha, VArrow(V_OMEGA, CTf(alpha)), T1)

    def test_enumeration_guarded_in_eta_mode(self):
        table = AtomTable(("a",), eta_mode="scott")
        with pytest.raises(ValueError):
            enumerate_types(1, 1, table)


class TestTypeGrammar:
    @pytest.mark.parametrize(
        "src",
        ["Wv", "Wc", "@a", "T Wv", "Wv -> Wc", "(Wv -> T Wv) & @a", "T (@a & @b)"],
    )
    def test_round_trip(self, src):
        t = parse_type(src)
        assert print_type(parse_type(print_type(t))) == print_type(t)

    def test_sort_errors(self):
        from ubcalc.typesys import TypeSyntaxError

        with pytest.raises(TypeSyntaxError):
            parse_type("Wc -> Wc")
        with pytest.raises(TypeSyntaxError):
            parse_type("Wv & Wc")
        with pytest.raises(TypeSyntaxError):
            parse_type("T Wc")
