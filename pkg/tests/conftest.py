from itertools import product

import pytest

import vknot.moves as moves

_ACCEPTANCE: dict[str, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): end-to-end check summarized after the run")


@pytest.fixture
def corrupted_r3(monkeypatch):
    """An RIII table that also accepts every sign variant of each triangle."""
    bad = set(moves.R3_TABLE)
    for body, _ in moves.R3_TABLE:
        for signs in product((1, -1), repeat=3):
            bad.add(moves._canonical(list(body), dict(enumerate(signs))))
    assert len(bad) > len(moves.R3_TABLE)
    monkeypatch.setattr(moves, "R3_TABLE", frozenset(bad))
    return bad


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label = marker.args[0]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _ACCEPTANCE.setdefault(label, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, results in _ACCEPTANCE.items():
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{status}  {label}  ({sum(results)}/{len(results)} checks)")
