import importlib.resources

import pytest

from wricc import parse_instance

# one line per acceptance criterion, echoed after the run so the
# pass/fail summary survives output capturing
ACCEPTANCE_LINES = []


def record_acceptance(criterion: str, ok: bool, detail: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'} {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

CORPUS = [
    # (file, answer, cond_i, cond_ii, cond_iii)
    ("lamplighter", "yes", "yes", "no", "yes"),
    ("f2-wr-z2", "yes", "yes", "yes", "no"),
    ("trivial-omega", "no", "no", "no", "no"),
    ("mixed-union", "no", "yes", "no", "no"),
    ("mixed-union-icc-base", "yes", "yes", "yes", "no"),
    ("s3-wr-s3", "no", "yes", "no", "no"),
]

EXTRA = [
    ("z2-wr-s3", "no", "yes", "no", "no"),
    ("intmod-cond-i", "no", "no", "no", "no"),
]


def instance_text(name: str) -> str:
    res = importlib.resources.files("wricc") / "instances_data" / f"{name}.wri"
    return res.read_text()


def load_instance(name: str):
    return parse_instance(instance_text(name))


@pytest.fixture
def lamplighter():
    return load_instance("lamplighter").group


@pytest.fixture
def f2_wr_z2():
    return load_instance("f2-wr-z2").group


@pytest.fixture
def z2_wr_s3():
    return load_instance("z2-wr-s3").group


@pytest.fixture
def mixed_union_icc():
    return load_instance("mixed-union-icc-base").group
