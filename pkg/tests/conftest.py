import pytest

_results: dict[int, list[tuple[str, str]]] = {}

TITLES = {
    1: "Example 1 reproduction",
    2: "Example 2 reproduction",
    3: "Example 3 reproduction",
    4: "Example 4 reproduction",
    5: "level-method oracle",
    6: "generating-function identity",
    7: "criterion <=> reality on the random corpus",
    8: "sweep soundness",
    9: "curve properties",
    10: "determinism",
}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _results.setdefault(n, []).append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(TITLES):
        runs = _results.get(n)
        if not runs:
            continue
        ok = all(o == "passed" for _, o in runs)
        tr.write_line(f"criterion {n:>2} ({TITLES[n]}): {'PASS' if ok else 'FAIL'}  [{len(runs)} test(s)]")
