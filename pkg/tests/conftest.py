import pytest

from ccx import _backend

BACKENDS = ["compiled", "python"] if len(_backend.kernels()) == 2 else ["python"]

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per elimination kernel, with a cold piece cache."""
    from ccx import invariants

    monkeypatch.setattr(invariants, "_PIECES", {})
    if request.param == "python":
        monkeypatch.setattr(_backend, "_compiled", None)
    else:
        from ccx import _kernel_c

        monkeypatch.setattr(_backend, "_compiled", _kernel_c)
    return request.param


@pytest.fixture(params=[k.BACKEND for k in _backend.kernels()])
def kernel(request):
    """A kernel module used directly, bypassing the dispatcher."""
    return next(k for k in _backend.kernels() if k.BACKEND == request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
