import pytest

from sumreg import _backend, debruijn, fsr, omega

BACKENDS = [_backend.python_kernels]
if _backend.compiled_kernels is not None:
    BACKENDS.append(_backend.compiled_kernels)


@pytest.fixture(params=BACKENDS, ids=lambda k: k.NAME)
def kernels(request):
    return request.param


@pytest.fixture
def pure_python(monkeypatch):
    """Route every module through the pure-Python kernels."""
    for mod in (fsr, debruijn, omega):
        monkeypatch.setattr(mod, "kernels", _backend.python_kernels)
    return _backend.python_kernels


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
