from contextlib import contextmanager
from itertools import combinations
from pathlib import Path

import pytest

import subsetharmony as sh

FIXTURES = Path(__file__).parent / "fixtures"

ACCEPTANCE_VERDICTS: list[str] = []


@contextmanager
def _criterion(n: int, desc: str):
    try:
        yield
    except BaseException:
        ACCEPTANCE_VERDICTS.append(f"[ACCEPTANCE {n}] FAIL: {desc}")
        raise
    ACCEPTANCE_VERDICTS.append(f"[ACCEPTANCE {n}] PASS: {desc}")


@pytest.fixture
def criterion():
    """Context manager recording a one-line acceptance verdict."""
    return _criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def tiny8_path() -> Path:
    return FIXTURES / "tiny8.csv"


@pytest.fixture(scope="session")
def tiny8(tiny8_path) -> sh.Dataset:
    return sh.load_csv(tiny8_path, "label")


@pytest.fixture(scope="session")
def tiny8_scores(tiny8) -> dict[tuple[int, ...], float]:
    """Exhaustive LOO-1NN score of every 3-feature subset of the fixture."""
    objective = sh.LeaveOneOutObjective(tiny8)
    return {
        combo: objective(sh.FeatureSubset(combo))
        for combo in combinations(range(tiny8.n_features), 3)
    }


@pytest.fixture()
def blobs() -> sh.Dataset:
    return sh.blob_dataset(n_per_class=15, n_features=4, n_classes=2, seed=3)
