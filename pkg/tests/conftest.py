import pytest

from clusterverify.quiver import ExchangeMatrix

_CRITERIA: dict[str, tuple[bool, str]] = {}


def linear_a(n):
    return ExchangeMatrix([[1 if j == i + 1 else -1 if i == j + 1 else 0 for j in range(n)] for i in range(n)])


A2 = linear_a(2)
A3 = linear_a(3)
A4 = linear_a(4)
D4 = ExchangeMatrix([[0, 1, 1, 1], [-1, 0, 0, 0], [-1, 0, 0, 0], [-1, 0, 0, 0]])
KRONECKER = ExchangeMatrix([[0, 2], [-2, 0]])
AFFINE_A2 = ExchangeMatrix([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]])
CYCLE3 = ExchangeMatrix([[0, -1, 1], [1, 0, -1], [-1, 1, 0]])


@pytest.fixture
def criterion():
    """Record the outcome of an acceptance criterion for the end-of-run summary."""

    def record(name, ok, detail=""):
        _CRITERIA[name] = (bool(ok), detail)
        assert ok, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: (len(s.split()[0]), s)):
        ok, detail = _CRITERIA[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
