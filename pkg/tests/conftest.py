import os
import time

from hypothesis import HealthCheck, settings

# reproducible by default; HYPOTHESIS_PROFILE=explore draws fresh examples
settings.register_profile("default", derandomize=True, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("explore", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []
FULL_SUITE_LIMIT = 600.0
_started = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
        secs = time.perf_counter() - _started
        status = "PASS" if secs < FULL_SUITE_LIMIT else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion 8: session wall time {secs:.1f}s "
                                    f"(tolerance: < {FULL_SUITE_LIMIT:.0f} s)")
