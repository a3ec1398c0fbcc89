import pytest

from hypothesis import HealthCheck, settings, strategies as st

from ubcalc.terms import Bind, Lambda, Unit, Variable

settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile("suite")


NAMES = st.sampled_from(["x", "y", "z", "w"])


def values(depth, env):
    opts = [st.builds(Lambda, NAMES, comps(depth - 1, env))] if depth > 0 else []
    banked = sorted(env)
    if banked:
        opts.append(st.sampled_from(banked).map(Variable))
    if not opts:
        opts = [st.just(Lambda("x", Unit(Variable("x"))))]
    return st.one_of(*opts)


def comps(depth, env=frozenset()):
    if depth <= 0:
        return st.builds(Unit, values(0, env))
    return st.one_of(
        st.builds(Unit, values(depth - 1, env)),
        st.builds(Bind, comps(depth - 1, env), values(depth - 1, env)),
    )


def closed_values(depth):
    # closed values are abstractions whose bodies may use the binder
    def lam(name, depth):
        return st.builds(Lambda, st.just(name), closed_comps(depth - 1, frozenset({name})))

    return lam("x", depth) if depth > 0 else st.just(Lambda("x", Unit(Variable("x"))))


def closed_comps(depth, env=frozenset()):
    vs = values(depth - 1, env) if env else closed_values(depth - 1)
    if depth <= 0:
        return st.builds(Unit, vs)

    def value_at(d):
        opts = [st.builds(Lambda, NAMES, st.deferred(lambda: closed_comps(0, env)))]
        banked = sorted(env)
        if banked:
            opts.append(st.sampled_from(banked).map(Variable))
        return st.one_of(*opts)

    inner = st.one_of(
        st.builds(Unit, _cv(depth - 1, env)),
        st.builds(Bind, closed_comps(depth - 1, env), _cv(depth - 1, env)),
    )
    return inner


def _cv(depth, env):
    names = st.sampled_from(["a", "b", "c"])
    opts = []
    if depth > 0:
        opts.append(
            names.flatmap(
                lambda n: st.builds(Lambda, st.just(n), closed_comps(depth - 1, env | {n}))
            )
        )
    banked = sorted(env)
    if banked:
        opts.append(st.sampled_from(banked).map(Variable))
    if not opts:
        opts = [st.just(Lambda("x", Unit(Variable("x"))))]
    return st.one_of(*opts)


@pytest.fixture(scope="session")
def closed_strategy():
    return closed_comps(4)


CLOSED_COMPS = closed_comps(4)
OPEN_COMPS = comps(4, frozenset({"u", "w"}))
