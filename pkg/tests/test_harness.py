import pytest

from ubcalc.harness import (
    GenConfig,
    SUITES,
    critical_pair_diagrams,
    derive_convergent_typing,
    gen_terms,
    gen_typed_term,
    run_suite,
    shrink_term,
)
from ubcalc.assignment import check_derivation
from ubcalc.convergence import Status, big_step
from ubcalc.reduction import enumerate_steps
from ubcalc.terms import Bind, alpha_eq, free_vars, is_comp, omega_c, term_size
from ubcalc.typesys import eq_c, parse_type


class TestGenerators:
    def test_deterministic(self):
        cfg = GenConfig(seed=42, cases=10)
        a = list(gen_terms(cfg))
        b = list(gen_terms(cfg))
        assert a == b

    def test_closed_and_sized(self):
        cfg = GenConfig(seed=1, max_size=18, cases=50)
        for t in gen_terms(cfg):
            assert is_comp(t)
            assert not free_vars(t)
            assert term_size(t) <= 3 * cfg.max_size

    def test_open_mode_emits_free_vars(self):
        cfg = GenConfig(seed=3, closed=False, cases=60)
        assert any(free_vars(t) for t in gen_terms(cfg))

    def test_typed_terms_validate(self):
        cfg = GenConfig(seed=7, max_size=12, cases=5)
        for i in range(5):
            m, d = gen_typed_term(cfg, i)
            assert check_derivation(d).valid
            assert alpha_eq(d.conclusion.subject, m)


class TestShrink:
    def test_shrinks_preserving_predicate(self):
        cfg = GenConfig(seed=11, max_size=22, cases=40)
        big = next(t for t in gen_terms(cfg) if isinstance(t, Bind) and term_size(t) > 10)
        small = shrink_term(big, lambda t: isinstance(t, Bind))
        assert isinstance(small, Bind)
        assert term_size(small) <= term_size(big)


class TestSuites:
    @pytest.mark.parametrize("name", sorted(SUITES))
    def test_runs_clean(self, name):
        cfg = GenConfig(seed=2, cases=8, max_size=12, fuel=120)
        rep = run_suite(name, cfg)
        assert rep.ok, rep.failures[:3]
        assert rep.cases > 0

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_suite("nope", GenConfig())

    def test_reports_json_shape(self):
        rep = run_suite("critical-pairs", GenConfig())
        data = rep.to_json()
        assert set(data) == {"suite", "cases", "passes", "failures", "inconclusive", "info"}


class TestDiagrams:
    def test_all_four_close(self):
        diagrams = critical_pair_diagrams()
        assert len(diagrams) == 4
        assert all(d["identical"] for d in diagrams)

    def test_reassociation_needs_two_steps(self):
        peak = [d for d in critical_pair_diagrams() if d["name"] == "reassociation-peak"][0]
        assert peak["identical"]


class TestConvergentTyping:
    def test_expansion_chain_reaches_t_top(self):
        m = Bind(omega_c().left, omega_c().right)  # diverges: no typing
        assert big_step(m, 100).status is not Status.CONVERGES

        good = next(
            t
            for t in gen_terms(GenConfig(seed=9, cases=60, max_size=14))
            if big_step(t, 200).status is Status.CONVERGES and enumerate_steps(t)
        )
        d = derive_convergent_typing(good, 300)
        assert d is not None
        assert check_derivation(d).valid
        assert eq_c(d.conclusion.tipo, parse_type("T Wv"))
        assert alpha_eq(d.conclusion.subject, good)
