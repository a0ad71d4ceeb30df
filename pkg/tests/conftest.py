import random
from fractions import Fraction

import pytest

ACCEPTANCE_LINES = []


def record_criterion(number: int, description: str, ok: bool, detail: str = ""):
    """Collect one pass/fail line per acceptance criterion; assert it."""
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {number}: {status}: {description}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

from genlab.contraction import measure_scaled_ledger
from genlab.groups import Braid3, FreeGroup, FreeProductZ2Z3
from genlab.spaces import build_bass_serre_tree, build_cayley_tree


@pytest.fixture(scope="session")
def f2():
    return FreeGroup(2)


@pytest.fixture(scope="session")
def f3():
    return FreeGroup(3)


@pytest.fixture(scope="session")
def braid():
    return Braid3()


@pytest.fixture(scope="session")
def zz23():
    return FreeProductZ2Z3()


@pytest.fixture(scope="session")
def tree2():
    tree, action = build_cayley_tree(2)
    return tree, action


@pytest.fixture(scope="session")
def tree3():
    tree, action = build_cayley_tree(3)
    return tree, action


@pytest.fixture(scope="session")
def bass_serre():
    tree, quot_action, braid_action = build_bass_serre_tree()
    return tree, quot_action, braid_action


@pytest.fixture(scope="session")
def f2_ledger(f2, tree2):
    _, action = tree2
    return measure_scaled_ledger(
        f2, f2.standard_gens(), action, f2.element("a"), random.Random(0), segment_length=4
    )


@pytest.fixture(scope="session")
def zz23_ledger(zz23, bass_serre):
    _, quot_action, _ = bass_serre
    return measure_scaled_ledger(
        zz23, zz23.standard_gens(), quot_action, zz23.element("xy"), random.Random(0),
        segment_length=2, sample_radius=5, dominating=Fraction(1),
        window=(Fraction(1, 4), Fraction(2, 5)), cut_window=(Fraction(1, 4), Fraction(2, 5)),
    )


@pytest.fixture(scope="session")
def braid_ledger(braid, bass_serre):
    _, _, braid_action = bass_serre
    return measure_scaled_ledger(
        braid, braid.standard_gens(), braid_action, braid.element("aB"),
        random.Random(0), segment_length=4, sample_radius=4,
    )


def random_reduced_word(rng: random.Random, rank: int, length: int) -> tuple:
    out = []
    letters = [a for s in range(1, rank + 1) for a in (s, -s)]
    for _ in range(length):
        pool = [c for c in letters if not out or c != -out[-1]]
        out.append(rng.choice(pool))
    return tuple(out)


def random_word(rng: random.Random, size: int, length: int) -> tuple:
    letters = [a for s in range(1, size + 1) for a in (s, -s)]
    return tuple(rng.choice(letters) for _ in range(length))
