import pytest

from essm_search import kernels


@pytest.fixture(autouse=True)
def kernel_guard():
    """Restore whatever kernel was active before each test; several tests
    (and every run_experiment call) switch the process-global selection."""
    prev = kernels.active_name()
    yield
    kernels.use(prev)
