import pytest

from affine_twist import grs

# Smallest member of each affine family plus the remaining exceptional types.
ACCEPTANCE_TRIPLES = [
    (1, 1, 1),
    (1, 1, 2),
    (1, 2, 2),
    (2, 2, 2),
    (2, 2, 3),
    (2, 3, 3),
    (2, 3, 4),
    (2, 3, 5),
]


@pytest.fixture(params=ACCEPTANCE_TRIPLES, ids=lambda t: "A=%d,%d,%d" % t)
def system(request):
    return grs.build_system(*request.param)


# criterion number -> (passed, detail); filled by test_acceptance.py
CRITERIA = {}


def record(key, passed, detail=""):
    CRITERIA[key] = (bool(passed), detail)
    print(f"criterion {key}: {'PASS' if passed else 'FAIL'} {detail}".rstrip())
    return passed


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA, key=str):
        passed, detail = CRITERIA[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if passed else 'FAIL'}  {detail}".rstrip())
