import pytest

from rletunnel.codec import Grid
from rletunnel.spotting import LEFT, TerminalNode
from rletunnel.tunneling import INTERMEDIATE, SOURCE, TARGET, Hub, Path

# 18x10 sample page.
SAMPLE_ROWS = [
    [14, 2, 2],
    [11, 5, 2],
    [5, 4, 2, 1, 1, 3, 2],
    [6, 3, 4, 3, 2],
    [5, 4, 6, 1, 2],
    [5, 5, 5, 1, 2],
    [3, 4, 1, 2, 4, 2, 2],
    [4, 2, 2, 2, 5, 1, 2],
    [5, 1, 4, 1, 4, 1, 2],
    [13, 5],
]

# Obstacle example: 18 rows, every row sums to 14.
OBSTACLE_ROWS = (
    [[3, 1, 10]] * 3
    + [[4, 2, 5, 1, 2]] * 3
    + [[5, 1, 5, 1, 2]] * 2
    + [[4, 1, 6, 1, 2]] * 2
    + [[7, 1, 3, 1, 2]] * 8
)

# Two adjacent paths as (y, dist); the source row is the first hub.
ADJACENT_PATH1 = [(1977, 767), (1984, 1058), (2000, 1295), (2020, 1325), (2014, 1626), (2029, 1901), (2049, 2085)]
ADJACENT_PATH2 = [(2079, 186), (2059, 367), (2073, 682), (2087, 1132), (2105, 1389), (2123, 1665), (2132, 1870), (2124, 2085)]

# The upper path with column indices.
LONG_PATH_HUBS = [(1977, 1, 767), (1984, 1, 1058), (2000, 9, 1295), (2020, 59, 1325), (2014, 53, 1626), (2029, 67, 1901), (2049, 77, 2085)]


def make_path(hubs, xs=None):
    n = len(hubs)
    out = []
    for i, h in enumerate(hubs):
        y, dist = h[0], h[-1]
        x = h[1] if len(h) == 3 else 1
        kind = SOURCE if i == 0 else (TARGET if i == n - 1 else INTERMEDIATE)
        out.append(Hub(y=y, x=x, dist=dist, kind=kind))
    return Path(source=TerminalNode(y=hubs[0][0], side=LEFT, weight=hubs[0][-1]), hubs=tuple(out))


@pytest.fixture
def sample_grid():
    return Grid.from_rows(SAMPLE_ROWS)


@pytest.fixture
def obstacle_grid():
    return Grid.from_rows(OBSTACLE_ROWS)


@pytest.fixture
def adjacent_paths():
    return make_path(ADJACENT_PATH1), make_path(ADJACENT_PATH2)


ACCEPTANCE = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} {detail}")
