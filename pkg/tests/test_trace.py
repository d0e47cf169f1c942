import json

import numpy as np
import pytest

from qteleport.errors import InputError, PreconditionError, ShapeError
from qteleport.trace import estimate_abs_trace, exact_trace_amplitude, success_probability

from conftest import random_complex, random_unitary

Z = np.diag([1.0, -1.0])


def diagonal_sum(u):
    return sum(u[i][i] for i in range(len(u)))


def test_exact_amplitude_examples(rng):
    assert exact_trace_amplitude(np.eye(4)) == 4
    assert exact_trace_amplitude(Z) == 0
    u = random_complex(rng, 4, 4)
    assert abs(exact_trace_amplitude(u) - diagonal_sum(u)) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exact_amplitude_is_trace(n, rng):
    for _ in range(10):
        for u in (random_complex(rng, 2**n, 2**n), random_unitary(rng, 2**n)):
            assert abs(exact_trace_amplitude(u) - diagonal_sum(u)) < 1e-12


def test_exact_amplitude_shape_errors():
    with pytest.raises(ShapeError):
        exact_trace_amplitude(np.eye(3))
    with pytest.raises(ShapeError):
        exact_trace_amplitude(np.ones((2, 4)))


def test_success_probability_examples():
    assert success_probability(np.eye(8)) == 1
    assert success_probability(Z) == 0
    assert success_probability(np.diag([1, 1j])) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(PreconditionError):
        success_probability([[1, 1], [0, 1]])


def test_success_probability_phase_invariant(rng):
    u = random_unitary(rng, 4)
    for theta in (0.3, 1.7, -2.2):
        assert abs(success_probability(np.exp(1j * theta) * u) - success_probability(u)) < 1e-12


def test_success_probability_at_most_one(rng):
    for n in (1, 2, 3):
        for _ in range(20):
            assert 0 <= success_probability(random_unitary(rng, 2**n)) <= 1
        flipped = np.eye(2**n)
        flipped[0, 0] = -1
        assert success_probability(flipped) < 1
        assert success_probability(np.exp(0.4j) * np.eye(2**n)) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_identity_and_z_are_exact(n):
    est = estimate_abs_trace(np.eye(2**n), 1000, 5)
    assert est.successes == 1000 and est.estimate == 2**n and est.std_error == 0
    z = estimate_abs_trace(Z, 1000, 5)
    assert z.successes == 0 and z.estimate == 0
    assert z.std_error_is_upper_bound and z.std_error == pytest.approx(2 * np.sqrt(3 / 1000))


def test_estimate_invariant(rng):
    u = random_unitary(rng, 4)
    est = estimate_abs_trace(u, 5000, 11)
    assert est.estimate == 4 * np.sqrt(est.successes / est.shots)
    assert est.exact_abs_trace == pytest.approx(abs(np.trace(u)))


def test_estimate_deterministic(rng):
    u = random_unitary(rng, 4)
    assert estimate_abs_trace(u, 2000, 3) == estimate_abs_trace(u, 2000, 3)
    assert estimate_abs_trace(u, 2000, 3).dumps() == estimate_abs_trace(u, 2000, 3).dumps()


def test_report_json_keys():
    obj = json.loads(estimate_abs_trace(np.eye(2), 10, 0).dumps())
    assert {"n", "shots", "successes", "estimate", "std_error", "exact_abs_trace", "seed"} <= set(obj)


def test_eight_by_eight_three_sigma_coverage(rng):
    u = random_unitary(rng, 8)
    hits = 0
    for seed in range(100):
        est = estimate_abs_trace(u, 10**5, seed)
        hits += abs(est.estimate - est.exact_abs_trace) <= 3 * est.std_error
    assert hits >= 99


def test_more_shots_do_not_hurt(rng):
    u = random_unitary(rng, 4)
    exact = abs(np.trace(u))
    small = [abs(estimate_abs_trace(u, 10**4, s).estimate - exact) for s in range(60)]
    large = [abs(estimate_abs_trace(u, 10**5, 1000 + s).estimate - exact) for s in range(60)]
    assert np.median(large) <= np.median(small)


@pytest.mark.parametrize("shots,seed", [(0, 1), (-3, 1), (1.5, 1), (10, -1)])
def test_bad_arguments(shots, seed):
    with pytest.raises(InputError):
        estimate_abs_trace(np.eye(2), shots, seed)
