import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from _naive import random_squarefree  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"

# criterion label -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def genus1_suite() -> list:
    """Ten (f, p) with deg f = 3, f squarefree mod p, p in {5, 7, 11, 13}."""
    rng = random.Random(20260101)
    primes = [5, 7, 11, 13, 5, 7, 11, 13, 5, 7]
    return [(random_squarefree(rng, p, 3), p) for p in primes]


def genus2_suite() -> list:
    """Five (f, p) with deg f = 5 over F_7 and F_11."""
    rng = random.Random(20260202)
    return [(random_squarefree(rng, p, 5), p) for p in [7, 11, 7, 11, 7]]


def extension_suite() -> list:
    """(f, p, n): a genus-1 and a genus-2 curve over F_{p^2}."""
    return [([1, 1, 0, 1], 3, 2), ([1, 2, 0, 0, 0, 1], 5, 2)]


@pytest.fixture
def record_acceptance():
    def record(label: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE[label] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1])):
        passed, detail = ACCEPTANCE[label]
        terminalreporter.write_line(f"{label}: {'PASS' if passed else 'FAIL'}  {detail}".rstrip())
