import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


def pytest_configure(config):
    # keep the CLI's default cache out of the user's home directory
    import os
    import tempfile

    os.environ.setdefault("ARTIFACT_CACHE_DIR", tempfile.mkdtemp(prefix="artifact-cache-"))
