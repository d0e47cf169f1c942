import sys

import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp


def random_complex(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_unitary(rng, dim):
    """Haar-random unitary via QR with the phase of R's diagonal removed."""
    q, r = np.linalg.qr(random_complex(rng, dim, dim))
    d = np.diag(r)
    return q * (d / np.abs(d))


def kron_oracle(a, b):
    """Entry-by-entry Kronecker product with explicit index arithmetic."""
    ra, ca = len(a), len(a[0])
    rb, cb = len(b), len(b[0])
    out = [[0j] * (ca * cb) for _ in range(ra * rb)]
    for i1 in range(ra):
        for j1 in range(ca):
            for i2 in range(rb):
                for j2 in range(cb):
                    out[i1 * rb + i2][j1 * cb + j2] = a[i1][j1] * b[i2][j2]
    return np.array(out)


def matmul_oracle(a, b):
    return np.array([[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
                     for i in range(len(a))])


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


_floats = st.floats(-4, 4, allow_nan=False, allow_infinity=False)
complex_entries = st.builds(complex, _floats, _floats)


def complex_matrices(max_side=4, rows=None, cols=None):
    side = st.integers(1, max_side)
    shape = st.tuples(st.just(rows) if rows else side, st.just(cols) if cols else side)
    return shape.flatmap(lambda s: hnp.arrays(np.complex128, s, elements=complex_entries))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}: {detail}")
