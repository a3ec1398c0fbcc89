import pytest
from hypothesis import given, settings

from conftest import CLOSED_COMPS

from ubcalc.moggi import (
    MApp,
    MLam,
    MLet,
    MRule,
    MVar,
    check_preservation,
    convertible,
    from_moggi,
    from_moggi_value,
    m_alpha_eq,
    m_enumerate_steps,
    m_free_vars,
    m_parse,
    m_print,
    m_root_steps,
    m_subst,
    to_moggi,
)
from ubcalc.reduction import enumerate_steps
from ubcalc.terms import Lambda, Unit, Variable, alpha_eq, is_comp, omega_c, parse_term, subst


def mterms(size, env):
    if size <= 0:
        return
    if size == 1:
        for v in env:
            yield MVar(v)
        return
    binder = f"m{size}"
    for b in mterms(size - 1, env + [binder]):
        yield MLam(binder, b)
    for ls in range(1, size - 1):
        for f in mterms(ls, env):
            for a in mterms(size - 1 - ls, env):
                yield MApp(f, a)
    for ls in range(1, size - 2):
        for bound in mterms(ls, env):
            for body in mterms(size - 2 - ls, env + [binder]):
                yield MLet(binder, bound, body)


class TestReduction:
    def test_beta_v(self):
        e = m_parse("(\\x. x) y")
        assert any(
            s.rule is MRule.BETA_V and m_alpha_eq(s.result, MVar("y"))
            for s in m_root_steps(e)
        )

    def test_let_id(self):
        e = m_parse("let x = (y z) in x")
        assert any(
            s.rule is MRule.ID and m_alpha_eq(s.result, m_parse("y z"))
            for s in m_root_steps(e)
        )

    def test_let_1_names_nonvalue_function(self):
        e = m_parse("(x y) z")
        got = [s for s in m_root_steps(e) if s.rule is MRule.LET_1]
        assert got and m_alpha_eq(got[0].result, m_parse("let q = (x y) in q z"))

    def test_let_2_names_nonvalue_argument(self):
        e = m_parse("x (y z)")
        got = [s for s in m_root_steps(e) if s.rule is MRule.LET_2]
        assert got and m_alpha_eq(got[0].result, m_parse("let q = (y z) in x q"))

    def test_comp_reassociates(self):
        e = m_parse("let b = (let a = x y in a) in b b")
        got = [s for s in m_root_steps(e) if s.rule is MRule.COMP]
        assert got and m_alpha_eq(got[0].result, m_parse("let a = x y in (let b = a in b b)"))

    def test_comp_renames_on_capture(self):
        e = MLet("b", MLet("a", MApp(MVar("x"), MVar("y")), MVar("a")), MVar("a"))
        (step,) = [s for s in m_root_steps(e) if s.rule is MRule.COMP]
        # the free a of the outer body must not be captured
        assert "a" in m_free_vars(step.result)

    def test_eta_v(self):
        e = m_parse("\\x. y x")
        assert any(s.rule is MRule.ETA_V for s in m_root_steps(e))
        shadowed = m_parse("\\x. x x")
        assert not any(s.rule is MRule.ETA_V for s in m_root_steps(shadowed))

    def test_compatible_closure_under_lambda_and_let(self):
        e = m_parse("\\z. let w = ((\\x. x) y) in w")
        rules = {s.rule for s in m_enumerate_steps(e)}
        assert MRule.BETA_V in rules and MRule.ID in rules


class TestTranslations:
    def test_unit_disappears(self):
        assert to_moggi(parse_term("unit v")) == MVar("v")

    def test_bind_becomes_let(self):
        got = to_moggi(parse_term("unit m * v"))
        assert m_alpha_eq(got, m_parse("let x = m in v x"))

    def test_omega_golden(self):
        got = to_moggi(omega_c())
        want = m_parse("let q = (\\x. let z = x in x z) in (\\x. let z = x in x z) q")
        assert m_alpha_eq(got, want)

    def test_from_value_application(self):
        got = from_moggi(m_parse("f y"))
        assert alpha_eq(got, parse_term("unit y * f"))

    def test_from_let_of_nonvalues(self):
        got = from_moggi(m_parse("let x = (f y) in (g x)"))
        assert alpha_eq(got, parse_term("(unit y * f) * (\\x. unit x * g)"))

    def test_identity_value_wraps(self):
        got = from_moggi(m_parse("\\x. x"))
        assert alpha_eq(got, parse_term("unit (\\x. unit x)"))

    def test_from_moggi_always_computation(self):
        for e in mterms(5, ["u"]):
            assert is_comp(from_moggi(e))

    @given(CLOSED_COMPS)
    @settings(max_examples=50)
    def test_to_moggi_value_classification(self, m):
        got = to_moggi(m)
        if isinstance(m, Unit):
            assert isinstance(got, (MVar, MLam))
        else:
            assert isinstance(got, MLet)


class TestSubstitutionLemmas:
    VALS = [MVar("q"), MLam("s", MVar("s")), MLam("s", MApp(MVar("s"), MVar("q")))]

    def test_to_moggi_exhaustive(self):
        vals = [
            Variable("q"),
            Lambda("s", Unit(Variable("s"))),
            Lambda("s", parse_term("unit s * q")),
        ]

        def small_comps(size, env):
            if size <= 1:
                for v in env:
                    yield Unit(Variable(v))
                return
            for v in env:
                yield Unit(Variable(v))
            yield Unit(Lambda("b", Unit(Variable("b"))))
            from ubcalc.terms import Bind

            for ls in range(1, size - 1):
                for left in small_comps(ls, env):
                    for name in env:
                        yield Bind(left, Variable(name))
                    yield Bind(left, Lambda("c", Unit(Variable("c"))))

        checked = 0
        for m in small_comps(4, ["x", "q"]):
            for w in vals:
                lhs = to_moggi(subst(m, "x", w))
                rhs = m_subst(to_moggi(m), "x", to_moggi(w))
                assert m_alpha_eq(lhs, rhs)
                checked += 1
        assert checked > 50

    def test_from_moggi_exhaustive(self):
        checked = 0
        for e in mterms(5, ["x", "q"]):
            for v in self.VALS:
                lhs = from_moggi(m_subst(e, "x", v))
                rhs = subst(from_moggi(e), "x", from_moggi_value(v))
                assert alpha_eq(lhs, rhs)
                checked += 1
        assert checked > 100


class TestPreservation:
    def test_let_v_is_one_beta(self):
        e = m_parse("let x = (\\z. z) in x x")
        results = [r for r in check_preservation(e) if r.rule is MRule.LET_V]
        assert results and all(r.reached and r.steps >= 1 for r in results)

    def test_comp_is_one_reassociation(self):
        e = m_parse("let y = (let x = (f q) in (g x)) in (h y)")
        results = [r for r in check_preservation(e) if r.rule is MRule.COMP]
        assert results and all(r.reached and r.steps == 1 for r in results)

    def test_let1_images_equal(self):
        e = m_parse("(f q) v")
        results = [r for r in check_preservation(e) if r.rule is MRule.LET_1]
        assert results and all(r.reached and r.steps == 0 for r in results)

    def test_let2_joins_through_eta(self):
        e = m_parse("v (f q)")
        results = [r for r in check_preservation(e) if r.rule is MRule.LET_2]
        assert results and all(r.preserved for r in results)
        assert any(r.eta_join and not r.reached for r in results)

    def test_eta_v_uses_eta(self):
        e = m_parse("\\x. v x")
        results = [r for r in check_preservation(e) if r.rule is MRule.ETA_V]
        assert results and all(r.preserved for r in results)

    def test_exhaustive_size_5(self):
        for e in mterms(5, ["u"]):
            assert all(r.preserved for r in check_preservation(e, fuel=300))


class TestConvertibility:
    def test_reflexive(self):
        e = m_parse("let x = u in x")
        assert convertible(e, e) is True

    def test_unrelated_normal_forms(self):
        assert convertible(MVar("a"), MVar("b")) is False

    def test_images_of_reduction_steps(self):
        m = parse_term("(unit (\\z. unit z) * (\\x. unit x * q)) * (\\y. unit y)")
        for step in enumerate_steps(m):
            assert convertible(to_moggi(m), to_moggi(step.result), fuel=500) is True

    def test_ub_side_dispatch(self):
        m = parse_term("unit (\\x. unit x) * (\\y. unit y)")
        n = parse_term("unit (\\x. unit x)")
        assert convertible(m, n) is True


class TestGrammar:
    @pytest.mark.parametrize(
        "src",
        [
            "x",
            "\\x. x y",
            "let x = y in x",
            "let x = (let y = z in y) in x x",
            "(\\x. x) (\\y. y)",
            "f (g h) k",
        ],
    )
    def test_round_trip(self, src):
        e = m_parse(src)
        assert m_alpha_eq(m_parse(m_print(e)), e)

    def test_application_left_associative(self):
        assert m_parse("f g h") == MApp(MApp(MVar("f"), MVar("g")), MVar("h"))
