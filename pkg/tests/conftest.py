import pytest
from hypothesis import settings

# fixed seeds: property tests draw the same examples on every run
settings.register_profile("ador", derandomize=True, deadline=None, max_examples=50)
settings.load_profile("ador")


def pytest_addoption(parser):
    parser.addoption("--skip-slow", action="store_true", help="skip the long-running acceptance test")


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--skip-slow"):
        return
    skip = pytest.mark.skip(reason="--skip-slow given")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.user_properties.append(("criterion", marker.args))


def pytest_terminal_summary(terminalreporter):
    rank = {"PASS": 0, "SKIP": 1, "FAIL": 2}
    lines = {}
    for status in ("passed", "failed", "error", "skipped"):
        for report in terminalreporter.stats.get(status, []):
            props = dict(getattr(report, "user_properties", ()))
            if "criterion" not in props:
                continue
            number, title = props["criterion"]
            verdict = {"passed": "PASS", "skipped": "SKIP"}.get(status, "FAIL")
            entry = lines.setdefault(number, {"title": title, "verdict": "PASS", "details": []})
            # parametrized criteria fail if any case fails
            if rank[verdict] > rank[entry["verdict"]]:
                entry["verdict"] = verdict
            if "detail" in props and props["detail"] not in entry["details"]:
                entry["details"].append(props["detail"])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(lines):
        entry = lines[number]
        detail = "; ".join(entry["details"])
        suffix = f"  [{detail}]" if detail else ""
        terminalreporter.write_line(f"criterion {number}: {entry['verdict']}  {entry['title']}{suffix}")
