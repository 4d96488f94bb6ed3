def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number][0])
    total = sum(elapsed for _, _, elapsed in RESULTS.values())
    terminalreporter.write_line(f"acceptance total: {total:.2f}s")
