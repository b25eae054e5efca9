import pytest

_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    number, text = marker.args
    entry = _results.setdefault(number, {"text": text, "ok": True, "notes": []})
    if report.failed or report.skipped:
        entry["ok"] = False
    if report.when == "call":
        entry["notes"] += [v for k, v in item.user_properties if k == "finding"]


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:2d}: {entry['text']}")
        for note in entry["notes"]:
            terminalreporter.write_line(f"             {note}")
