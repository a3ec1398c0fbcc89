import pytest
from hypothesis import given, settings

from conftest import CLOSED_COMPS

from ubcalc.assignment import (
    C_OMEGA,
    Derivation,
    Judgment,
    ObligationSet,
    Unsynthesizable,
    arrow_e_node,
    ax,
    basis_meet,
    check_derivation,
    infer_bounded,
    invert,
    make_basis,
    synth_derivation,
    typable_nontrivial,
)
from ubcalc.derivfile import parse_derivation, print_derivation
from ubcalc.reduction import DEFAULT_RULES, Rule, enumerate_steps
from ubcalc.terms import (
    Bind,
    Lambda,
    Unit,
    Variable,
    alpha_eq,
    omega_c,
)
from ubcalc.transform import (
    TransformError,
    expand_derivation,
    reduce_derivation,
    subst_derivation,
)
from ubcalc.typesys import (
    CTf,
    V_OMEGA,
    VArrow,
    enumerate_types,
    eq_c,
    parse_type,
    to_ctype,
)

UNIVERSE = enumerate_types(2, 2)
UVALS = UNIVERSE[0]
ID_LAM = Lambda("x", Unit(Variable("x")))


def two_node_identity_derivation():
    # Ax; UnitI; ArrowI for |- \x.unit x : Wv -> T Wv
    inner = ax(make_basis([("x", V_OMEGA)]), "x")
    unit = Derivation("UnitI", Judgment(inner.conclusion.basis, Unit(Variable("x")), CTf(V_OMEGA)), (inner,))
    return Derivation(
        "ArrowI",
        Judgment((), ID_LAM, VArrow(V_OMEGA, CTf(V_OMEGA))),
        (unit,),
    )


class TestChecker:
    def test_identity_lambda(self):
        rep = check_derivation(two_node_identity_derivation())
        assert rep.valid, rep.errors

    def test_omega_types_anything(self):
        d = Derivation("Omega", Judgment((), omega_c(), C_OMEGA))
        assert check_derivation(d).valid

    def test_bad_arrow_e_content(self):
        # content T(Wv) does not entail the argument Wv -> T Wv
        good = two_node_identity_derivation()
        m = Derivation("Omega", Judgment((), Unit(ID_LAM), C_OMEGA))
        sub = Derivation(
            "Leq",
            Judgment((), Unit(ID_LAM), CTf(V_OMEGA)),
            (m,),
            (C_OMEGA, CTf(V_OMEGA)),
        )
        lam_ty = VArrow(parse_type("Wv -> T Wv"), CTf(V_OMEGA))
        lam = Derivation("Leq", Judgment((), ID_LAM, lam_ty), (good,), (good.conclusion.tipo, lam_ty))
        node = Derivation(
            "ArrowE",
            Judgment((), Bind(Unit(ID_LAM), ID_LAM), CTf(V_OMEGA)),
            (sub, lam),
        )
        rep = check_derivation(node)
        assert not rep.valid
        assert any("side condition fails" in msg or "does not entail" in msg for _, msg in rep.errors)

    def test_basis_clash_detected(self):
        inner = ax(make_basis([("x", V_OMEGA)]), "x")
        unit = Derivation("UnitI", Judgment(inner.conclusion.basis, Unit(Variable("x")), CTf(V_OMEGA)), (inner,))
        lam = Derivation(
            "ArrowI",
            Judgment(make_basis([("x", parse_type("Wv -> T Wv"))]), ID_LAM, VArrow(V_OMEGA, CTf(V_OMEGA))),
            (unit,),
        )
        rep = check_derivation(lam)
        assert not rep.valid

    def test_leq_side_condition_checked(self):
        base = Derivation("Omega", Judgment((), Unit(ID_LAM), C_OMEGA))
        bad = Derivation(
            "Leq",
            Judgment((), Unit(ID_LAM), CTf(V_OMEGA)),
            (base,),
            (C_OMEGA, CTf(V_OMEGA)),
        )
        rep = check_derivation(bad)
        assert not rep.valid


class TestInfer:
    def test_omega_only_top_class(self):
        found = infer_bounded((), omega_c(), UNIVERSE)
        assert [c for c in found if not c.is_top] == []

    def test_unit_identity_gets_t_top(self):
        found = infer_bounded((), Unit(ID_LAM), UNIVERSE)
        assert any(eq_c(to_ctype(c), parse_type("T Wv")) for c in found)

    def test_identity_lambda_below_arrow_class(self):
        found = infer_bounded((), ID_LAM, UNIVERSE)
        want = parse_type("Wv -> T Wv")
        from ubcalc.typesys import leq_v, to_vtype

        assert any(not v.is_top and leq_v(to_vtype(v), want) for v in found)

    def test_typable_nontrivial(self):
        assert typable_nontrivial(Unit(ID_LAM), UNIVERSE) is not None
        assert typable_nontrivial(omega_c(), UNIVERSE) is None

    def test_open_term_rejected(self):
        with pytest.raises(ValueError):
            typable_nontrivial(Unit(Variable("x")), UNIVERSE)


class TestInvert:
    def test_variable_clause(self):
        basis = make_basis([("x", parse_type("Wv -> T Wv"))])
        obs = invert(basis, Variable("x"), parse_type("Wv -> T Wv"), UNIVERSE)
        assert len(obs) == 1 and obs[0].judgments == ()

    def test_variable_not_below(self):
        basis = make_basis([("x", V_OMEGA)])
        assert invert(basis, Variable("x"), parse_type("Wv -> T Wv"), UNIVERSE) == []

    def test_unit_clause(self):
        obs = invert((), Unit(ID_LAM), parse_type("T Wv"), UNIVERSE)
        assert len(obs) == 1
        (j,) = obs[0].judgments
        assert j.subject == ID_LAM

    def test_bind_clause_ranges_over_universe(self):
        m = Bind(Unit(ID_LAM), ID_LAM)
        obs = invert((), m, parse_type("T Wv"), UNIVERSE)
        assert len(obs) == len(UVALS)
        for ob in obs:
            assert len(ob.judgments) == 2

    def test_trivial_sigma_empty_obligation(self):
        assert invert((), omega_c(), C_OMEGA, UNIVERSE) == [ObligationSet((), ())]

    def test_obligations_reassemble(self):
        # satisfy a bind obligation with synthesized witnesses, then glue
        m = Bind(Unit(ID_LAM), ID_LAM)
        target = parse_type("T Wv")
        for ob in invert((), m, target, UNIVERSE):
            try:
                left = synth_derivation(ob.judgments[0].basis, ob.judgments[0].subject, ob.judgments[0].tipo, UVALS)
                right = synth_derivation(ob.judgments[1].basis, ob.judgments[1].subject, ob.judgments[1].tipo, UVALS)
            except Unsynthesizable:
                continue
            node = arrow_e_node(left, right)
            assert check_derivation(node).valid
            return
        pytest.fail("no obligation set was satisfiable")


class TestSynth:
    def test_identity_example(self):
        d = synth_derivation((), ID_LAM, parse_type("Wv -> T Wv"), UVALS)
        assert check_derivation(d).valid

    def test_unsynthesizable_raises(self):
        with pytest.raises(Unsynthesizable):
            synth_derivation((), omega_c(), parse_type("T Wv"), UVALS)

    @given(CLOSED_COMPS)
    @settings(max_examples=40)
    def test_minimal_always_synthesizable(self, m):
        tnt = typable_nontrivial(m, UNIVERSE)
        target = tnt if tnt is not None else C_OMEGA
        d = synth_derivation((), m, target, UVALS)
        assert check_derivation(d).valid
        assert alpha_eq(d.conclusion.subject, m)


class TestTransformations:
    @given(CLOSED_COMPS)
    @settings(max_examples=35)
    def test_subject_reduction(self, m):
        tnt = typable_nontrivial(m, UNIVERSE)
        d = synth_derivation((), m, tnt if tnt else C_OMEGA, UVALS)
        for step in enumerate_steps(d.conclusion.subject, DEFAULT_RULES):
            nd = reduce_derivation(d, step)
            assert check_derivation(nd).valid
            assert nd.conclusion.tipo == d.conclusion.tipo
            assert alpha_eq(nd.conclusion.subject, step.result)

    @given(CLOSED_COMPS)
    @settings(max_examples=35)
    def test_subject_expansion(self, m):
        for step in enumerate_steps(m, DEFAULT_RULES):
            tnt = typable_nontrivial(step.result, UNIVERSE)
            d = synth_derivation((), step.result, tnt if tnt else C_OMEGA, UVALS)
            ed = expand_derivation(m, step, d)
            assert check_derivation(ed).valid
            assert ed.conclusion.tipo == d.conclusion.tipo
            assert alpha_eq(ed.conclusion.subject, m)

    def test_id_expansion_example(self):
        d = synth_derivation((), Unit(ID_LAM), parse_type("T Wv"), UVALS)
        src = Bind(Unit(ID_LAM), Lambda("z", Unit(Variable("z"))))
        step = [s for s in enumerate_steps(src) if s.rule is Rule.ID][0]
        ed = expand_derivation(src, step, d)
        assert check_derivation(ed).valid
        assert ed.conclusion.tipo == parse_type("T Wv")

    def test_trivial_type_expansion_is_omega(self):
        d = Derivation("Omega", Judgment((), Unit(ID_LAM), C_OMEGA))
        src = Bind(Unit(ID_LAM), Lambda("z", Unit(Variable("z"))))
        step = [s for s in enumerate_steps(src) if s.rule is Rule.ID][0]
        ed = expand_derivation(src, step, d)
        assert check_derivation(ed).valid and ed.conclusion.tipo == C_OMEGA

    def test_eta_step_rejected(self):
        d = Derivation("Omega", Judgment((), omega_c(), C_OMEGA))
        from ubcalc.reduction import Step

        with pytest.raises(TransformError):
            reduce_derivation(d, Step(Rule.ETA_C, (), omega_c()))

    def test_substitution_lemma_construction(self):
        # Gamma, x: Wv -> T Wv |- unit x * x : T Wv with V = identity
        basis = make_basis([("x", parse_type("Wv -> T Wv"))])
        body = Bind(Unit(Variable("x")), Variable("x"))
        d = synth_derivation(basis, body, parse_type("T Wv"), UVALS)
        dv = synth_derivation((), ID_LAM, parse_type("Wv -> T Wv"), UVALS)
        got = subst_derivation(d, "x", dv)
        assert check_derivation(got).valid
        assert alpha_eq(got.conclusion.subject, Bind(Unit(ID_LAM), ID_LAM))
        assert got.conclusion.tipo == parse_type("T Wv")


class TestBasisHelpers:
    def test_meet_is_pointwise(self):
        a = make_basis([("x", V_OMEGA), ("y", parse_type("Wv -> T Wv"))])
        b = make_basis([("y", V_OMEGA), ("z", V_OMEGA)])
        m = dict(basis_meet(a, b))
        assert set(m) == {"x", "y", "z"}
        from ubcalc.typesys import eq_v

        assert eq_v(m["y"], parse_type("(Wv -> T Wv) & Wv"))


class TestDerivationFiles:
    def test_round_trip(self):
        d = synth_derivation((), Unit(ID_LAM), parse_type("T Wv"), UVALS)
        text = print_derivation(d)
        back = parse_derivation(text)
        assert back == d

    def test_round_trip_with_basis_and_side(self):
        basis = make_basis([("x", parse_type("(Wv -> T Wv) & Wv"))])
        d = synth_derivation(basis, Unit(Variable("x")), parse_type("T Wv"), UVALS)
        back = parse_derivation(print_derivation(d))
        assert back == d
        assert check_derivation(back).valid
