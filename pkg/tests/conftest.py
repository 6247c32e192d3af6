def pytest_runtest_logreport(report):
    # one visible pass/fail line per acceptance criterion
    if report.when == "call" and "test_acceptance" in report.nodeid:
        status = "PASS" if report.passed else "FAIL"
        criterion = report.nodeid.split("::")[-1].removeprefix("test_")
        print(f"\n[ACCEPTANCE] {status} {criterion}")
