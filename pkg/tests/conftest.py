import pytest

_OUTCOMES: dict = {}


def pytest_addoption(parser):
    parser.addoption("--skipslow", action="store_true", default=False,
                     help="skip tests marked slow (the d = 4 instance)")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running, skipped with --skipslow")
    config.addinivalue_line("markers", "criterion(tag): acceptance criterion covered by the test")


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--skipslow"):
        return
    skip = pytest.mark.skip(reason="slow; --skipslow given")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    tag = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        state = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        prev = _OUTCOMES.get(tag)
        if prev is None or state == "FAIL" or (prev == "PASS" and state == "SKIP"):
            _OUTCOMES[tag] = state


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")

    def key(tag):
        return (int("".join(c for c in tag if c.isdigit())), tag)

    for tag in sorted(_OUTCOMES, key=key):
        terminalreporter.write_line(f"criterion {tag}: {_OUTCOMES[tag]}")
