import os

from hypothesis import HealthCheck, settings, strategies as st

from grouploc.words import Word

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def words(alphabet=("x", "y"), max_letters=8, max_exp=3):
    letter = st.tuples(st.sampled_from(alphabet), st.integers(-max_exp, max_exp).filter(bool))
    return st.lists(letter, max_size=max_letters).map(Word.from_letters)


def commutator_words(alphabet=("x", "y"), max_letters=6):
    """Words with all exponent sums zero: u * v * u^-1 * v^-1 style products."""
    pair = st.tuples(words(alphabet, 3, 2), words(alphabet, 3, 2))
    return st.lists(pair, min_size=1, max_size=2).map(
        lambda ps: _prod(u * v * u.inverse() * v.inverse() for u, v in ps)
    )


def _prod(ws):
    out = Word()
    for w in ws:
        out = out * w
    return out


# one line per acceptance criterion, echoed in the terminal summary
CRITERIA: list = []


def record(number: int, label: str, ok: bool) -> bool:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {label}"
    CRITERIA.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA):
            terminalreporter.write_line(line)
