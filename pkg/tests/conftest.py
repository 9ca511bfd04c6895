import pytest
from hypothesis import HealthCheck, settings

from rigidcert import kernels

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

BACKENDS = ["python"] + (["compiled"] if kernels.HAVE_COMPILED else [])


def pytest_addoption(parser):
    parser.addoption("--kernels", choices=("default", "python", "compiled"), default="default",
                     help="run the whole suite on one kernel backend")


def pytest_configure(config):
    choice = config.getoption("--kernels")
    if choice != "default":
        kernels.set_backend(choice)


@pytest.fixture(params=BACKENDS)
def kernel_backend(request):
    with kernels.using(request.param):
        yield request.param


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
