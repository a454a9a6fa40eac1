"""Acceptance gate: the ten headline guarantees, at full scale.

Each test drives one named check from the shared suite in
wittlab.selftest (the same code the ``wittlab selftest`` command runs)
and prints a single PASS/FAIL line with the check's summary.
"""

import time

import pytest
from wittlab import selftest

CRITERIA = [
    (1, "backend-equivalence"),
    (2, "ghost-homomorphism-roundtrip"),
    (3, "teichmuller-power-identities-mod-p"),
    (4, "valuation-table"),
    (5, "theta-map-correctness"),
    (6, "roots-of-unity-classification"),
    (7, "tr-operator-consistency"),
    (8, "tc-kernel-exactness"),
    (9, "tilt-integrity"),
    (10, "ghost-rational-bijectivity"),
]

_FNS = dict(selftest.CHECKS)
_PROFILE = selftest._profile("full")


@pytest.mark.parametrize("num,name", CRITERIA, ids=[n for _, n in CRITERIA])
def test_criterion(num, name, capsys):
    t0 = time.perf_counter()
    try:
        passed, detail = _FNS[name](_PROFILE)
    except Exception as exc:  # a crash is a failure, not an error
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    verdict = "PASS" if passed else "FAIL"
    with capsys.disabled():
        print(f"[{verdict}] criterion {num:2d} {name}: {detail} ({dt:.2f}s)")
    assert passed, f"criterion {num} ({name}): {detail}"
