import pytest

CRITERIA = {
    1: "lemma census",
    2: "pencil lemmas",
    3: "constructive direction",
    4: "classification direction",
    5: "oracle equivalence",
    6: "cover-mode rediscovery",
    7: "proof-structure properties",
    8: "group sanity",
}

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    entry = _results.setdefault(marker.args[0], [])
    entry.append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        runs = _results.get(n)
        if not runs:
            continue
        failed = [name for name, outcome in runs if outcome != "passed"]
        status = "FAIL" if failed else "PASS"
        detail = f" ({', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {n} {title}: {status} "
                                    f"[{len(runs) - len(failed)}/{len(runs)}]{detail}")
