from hypothesis import settings

# Derandomized so that two runs of the suite see the same examples.
settings.register_profile("repro", derandomize=True, deadline=None, database=None, print_blob=False)
settings.load_profile("repro")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
