import math

import numpy as np
import pytest


def rect_oracle(h, w, i_r, j_r, theta, H, W):
    """Cell-by-cell evaluation of the calibrated edge rule (0 <= theta < 90)."""
    rad = math.radians(theta)
    t, c, s = (0.0, 1.0, 0.0) if theta == 0 else (math.tan(rad), math.cos(rad), math.sin(rad))

    def rnd(x):
        return math.floor(x + 0.5)

    it = rnd(i_r + h * c - w * s)
    jt = rnd(j_r + h * s + w * c)
    out = np.zeros((H, W), dtype=np.uint8)
    for i in range(1, H + 1):
        for j in range(1, W + 1):
            il = rnd(i_r - t * (j - j_r))
            iu = rnd(it - t * (j - jt))
            jl = rnd(j_r + t * (i - i_r))
            ju = rnd(jt + t * (i - it))
            if il <= i < iu and jl <= j < ju:
                out[i - 1, j - 1] = 1
    return out


def circle_oracle(d, ic, jc, H, W):
    out = np.zeros((H, W), dtype=np.uint8)
    for i in range(1, H + 1):
        for j in range(1, W + 1):
            if (i - ic) ** 2 + (j - jc) ** 2 <= (d / 2) ** 2:
                out[i - 1, j - 1] = 1
    return out


def a1_oracle(cells, walls=False):
    b = (np.asarray(cells) == 1).astype(int)
    if walls:
        b = np.pad(b, 1, constant_values=1)
    n = 0
    for r in range(b.shape[0] - 1):
        for q in range(b.shape[1] - 1):
            n += b[r, q] and b[r + 1, q] and b[r, q + 1] and b[r + 1, q + 1]
    return n


@pytest.fixture
def oracles():
    return {"rect": rect_oracle, "circle": circle_oracle, "a1": a1_oracle}


ACCEPTANCE_LINES: list[str] = []


def record(criterion, ok, detail):
    ACCEPTANCE_LINES.append(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
