import time

from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

SESSION_START = time.monotonic()


def pytest_collection_modifyitems(items):
    # the runtime-budget criterion measures the whole run, so it goes last
    tail = [it for it in items if "runtime_budget" in it.name]
    for it in tail:
        items.remove(it)
        items.append(it)
