import pytest

from mixres import parse

EXAMPLE = "(z1^4 + z2^3)*conj(z1^2 + z2^3)"

# named weights of the running example
E1, R, P, S, Q, T, U, E2 = (1, 0), (2, 1), (3, 2), (1, 1), (3, 4), (2, 3), (1, 2), (0, 1)

AB_PAIRS = [(a, b) for a in range(5) for b in range(4)]


def f_ab_text(a, b):
    return f"z1^4*zb1^2 + z1^{a}*zb1^{4 - a}*z2^{b}*zb2^{3 - b} + zb1^2*z2^3 + z2^3*zb2^3"


def f_ab(a, b):
    return parse(f_ab_text(a, b), 2)


@pytest.fixture
def example():
    return parse(EXAMPLE, 2)


_acceptance_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion check")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for mark in report.user_properties:
        if mark[0] == "acceptance":
            key = mark[1]
            prev = _acceptance_results.get(key, (True, mark[2]))
            _acceptance_results[key] = (prev[0] and report.outcome == "passed", mark[2])


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            item.user_properties.append(("acceptance", m.args[0], m.args[1]))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_acceptance_results):
        ok, title = _acceptance_results[key]
        terminalreporter.write_line(f"AC{key:<2} {'PASS' if ok else 'FAIL'}  {title}")
