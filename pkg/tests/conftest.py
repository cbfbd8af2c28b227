import sys

from hypothesis import HealthCheck, settings

settings.register_profile(
    "btas",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("btas")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance checklist after capture ends, one line each."""
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "CRITERION_RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, detail in results:
        suffix = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"[{status}] {name}{suffix}")
