import pytest

_RESULTS = {}


@pytest.fixture
def note(request):
    """Attach a one-line detail to the current acceptance criterion."""

    def _note(text):
        request.node.user_properties.append(("detail", text))

    return _note


@pytest.fixture
def set_status(request):
    """Report a passing criterion under a different label, e.g. TIMEOUT."""

    def _set(label):
        request.node.user_properties.append(("status", label))

    return _set


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    details = [v for k, v in item.user_properties if k == "detail"]
    status = "PASS" if rep.passed else "FAIL"
    override = [v for k, v in item.user_properties if k == "status"]
    if rep.passed and override:
        status = override[-1]
    _RESULTS[mark.args[0]] = (status, "; ".join(details))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        status, detail = _RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {status}" + (f" ({detail})" if detail else ""))
