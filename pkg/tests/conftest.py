import pytest

_verdicts: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test's own assertions decide pass/fail."""
    name = request.node.get_closest_marker("criterion").args[0]
    detail = {"text": ""}
    yield detail
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    _verdicts[name] = (ok, detail["text"])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_verdicts, key=lambda s: int(s.split()[0])):
        ok, text = _verdicts[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}  {text}")
