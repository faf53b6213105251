from hypothesis import settings

# first calls pay for JIT compilation of each new type signature
settings.register_profile("jit", deadline=None)
settings.load_profile("jit")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
