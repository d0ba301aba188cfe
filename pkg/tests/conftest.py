import pytest

from nhdiff import make_field

# (p, n) pairs with q = 3 (mod 4) used throughout
SMALL_FIELDS = [(7, 1), (11, 1), (19, 1), (23, 1), (3, 3), (31, 1)]
ALL_FIELDS = SMALL_FIELDS + [(7, 3)]


def field_id(pn):
    p, n = pn
    return f"q{p ** n}"


@pytest.fixture(params=SMALL_FIELDS, ids=field_id)
def small_field(request):
    return make_field(*request.param)


@pytest.fixture(scope="session")
def f343():
    return make_field(7, 3)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
