from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ordforge.words import Gen, Word, a, s, x

settings.register_profile("ordforge", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ordforge")

# (criterion number, passed, description) recorded by test_acceptance
ACCEPTANCE_LINES: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted({n for n, _, _ in ACCEPTANCE_LINES}):
        parts = [(ok, text) for m, ok, text in ACCEPTANCE_LINES if m == n]
        verdict = "PASS" if all(ok for ok, _ in parts) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  " + " | ".join(text for _, text in parts))


def words_over(gens: list[Gen], max_syllables: int = 8, max_exp: int = 3):
    letter = st.tuples(st.sampled_from(gens), st.integers(-max_exp, max_exp).filter(bool))
    return st.lists(letter, max_size=max_syllables).map(Word)


free_words = words_over([x(1), x(2)])
eg_words = words_over([a(i) for i in range(-3, 4)])
braid3_words = words_over([s(1), s(2)], max_syllables=6, max_exp=2)
braid4_words = words_over([s(1), s(2), s(3)], max_syllables=6, max_exp=2)
