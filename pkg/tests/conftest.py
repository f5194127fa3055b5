import pytest

from ptosc.eigensolver import available_backends, use_backend


@pytest.fixture(params=available_backends())
def backend(request):
    """Run the test once per available kernel backend."""
    with use_backend(request.param):
        yield request.param
