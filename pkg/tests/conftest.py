import os

import pytest

from bibdcodes.designs import Design, read_design

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def affine_plane_order3(class_order=("columns", "diag1", "diag2", "rows")) -> Design:
    """AG(2,3) by brute force: points 3r+c, lines = triples summing to
    zero componentwise; classes grouped by parallel direction."""
    points = [(r, c) for r in range(3) for c in range(3)]
    lines = []
    for i in range(9):
        for j in range(i + 1, 9):
            for k in range(j + 1, 9):
                a, b, c = points[i], points[j], points[k]
                if (a[0] + b[0] + c[0]) % 3 == 0 and (a[1] + b[1] + c[1]) % 3 == 0:
                    lines.append(tuple(sorted(3 * p[0] + p[1] for p in (a, b, c))))
    assert len(lines) == 12

    def direction(line):
        pts = [(x // 3, x % 3) for x in line]
        dr = (pts[1][0] - pts[0][0]) % 3
        dc = (pts[1][1] - pts[0][1]) % 3
        if dr == 0:
            return "rows"
        if dc == 0:
            return "columns"
        return "diag1" if dc == dr else "diag2"

    grouped = {name: [] for name in ("rows", "columns", "diag1", "diag2")}
    for line in sorted(lines):
        grouped[direction(line)].append(line)
    blocks = []
    classes = []
    for name in class_order:
        start = len(blocks)
        blocks.extend(grouped[name])
        classes.append(tuple(range(start, start + 3)))
    return Design(v=9, k=3, blocks=tuple(blocks), resolution=tuple(classes))


@pytest.fixture(scope="session")
def ag23() -> Design:
    return affine_plane_order3()


@pytest.fixture(scope="session")
def kts21() -> Design:
    return read_design(os.path.join(DATA_DIR, "kts21.design"))


@pytest.fixture(scope="session")
def crcbibd39() -> Design:
    return read_design(os.path.join(DATA_DIR, "crcbibd39.design"))
