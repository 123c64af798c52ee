import pytest


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    meta = getattr(getattr(item, "function", None), "acceptance_line", None)
    if meta is None or report.when != "call":
        return
    n, desc = meta
    word = "PASS" if report.passed else "FAIL"
    tr = item.config.pluginmanager.get_plugin("terminalreporter")
    if tr is not None:
        tr.write_line(f"{word}  criterion {n:2d}: {desc}")
