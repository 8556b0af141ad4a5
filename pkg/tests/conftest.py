import os
import pathlib
import sys

REPO = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

# all processes (tests, CLI runs, warm-up scripts) share one cache
os.environ.setdefault("MTKIT_CACHE", str(REPO / ".mtkit-cache"))

import pytest  # noqa: E402


@pytest.fixture(scope="session")
def data_dir() -> pathlib.Path:
    return REPO / "tests" / "data"


def _read_kat(path: pathlib.Path) -> tuple[int, list[int]]:
    lines = path.read_text().splitlines()
    seed = int(lines[0].split("=")[1])
    return seed, [int(x) for x in lines[1:] if x]


@pytest.fixture(scope="session")
def kat_int32_5489(data_dir):
    return _read_kat(data_dir / "mt19937_int32_seed5489.txt")


@pytest.fixture(scope="session")
def kat_int32_1(data_dir):
    return _read_kat(data_dir / "mt19937_int32_seed1.txt")


@pytest.fixture(scope="session")
def kat_res53_5489(data_dir):
    return _read_kat(data_dir / "mt19937_res53_seed5489.txt")


def pytest_runtest_logreport(report):
    # one visible line per acceptance check, pass or fail
    if report.when != "call":
        return
    if "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    outcome = "PASS" if report.passed else "FAIL"
    print(f"\n[acceptance] {name}: {outcome}", file=sys.stderr)
