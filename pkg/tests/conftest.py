import contextlib
import time

import numpy as np
import pytest

_ACCEPTANCE = []


@contextlib.contextmanager
def criterion(number, title, max_seconds):
    """Record a pass/fail line for an acceptance criterion, runtime included."""
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        ok = ok and elapsed < max_seconds
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} ({elapsed:.2f}s / limit {max_seconds}s)"
        _ACCEPTANCE.append(line)
        print(line)
    assert elapsed < max_seconds, f"criterion {number} took {elapsed:.2f}s"


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


def random_complex(rng, shape, scale=1.0):
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def random_hermitean(rng, d):
    a = random_complex(rng, (d, d))
    return (a + a.conj().T) / 2


PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
