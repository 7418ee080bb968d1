import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from isolord.catalog import centerless, tower, two_cyclic
from isolord.words import Word

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def K():
    return two_cyclic(2, 3)


@pytest.fixture(scope="session")
def H():
    return centerless(2, 3, 2, 3)


@pytest.fixture(scope="session")
def T():
    return tower(2, 3, 4)


# groups used by property tests; built once per session
GROUPS = {
    "K": two_cyclic(2, 3),
    "T234": tower(2, 3, 4),
    "H2323": centerless(2, 3, 2, 3),
}


def words(letters, max_size=12):
    """Strategy for freely reduced words over ``letters`` and their inverses."""
    letter = st.tuples(st.sampled_from(sorted(letters)), st.sampled_from([1, -1, 2, -2]))
    return st.lists(letter, max_size=max_size).map(Word)


def group_and_words(n=1, max_size=12):
    """Strategy for ``(name, node, w1, ..., wn)`` over the session groups."""
    return st.sampled_from(sorted(GROUPS)).flatmap(
        lambda name: st.tuples(
            st.just(name), st.just(GROUPS[name]), *[words(GROUPS[name].leaves, max_size) for _ in range(n)]
        )
    )


# one line per acceptance criterion, filled in by test_acceptance and printed at the end
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
