"""Backend selection and agreement between the two contraction kernels."""

import os
import subprocess
import sys

import numpy as np
import pytest

from tensyl import backend
from tensyl import tensor as tc

from conftest import random_tensor


@pytest.fixture
def restore_backend():
    previous = backend.active_backend()
    yield
    backend.set_backend(previous)


class TestSelection:
    def test_default_is_numba_when_available(self):
        assert backend.active_backend() in ("numba", "numpy")

    def test_switching(self, restore_backend):
        backend.set_backend("numpy")
        assert backend.active_backend() == "numpy"
        backend.set_backend("numba")
        assert backend.active_backend() == "numba"

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError):
            backend.set_backend("gpu")

    def test_env_variable_selects_backend(self):
        env = dict(os.environ, TENSYL_BACKEND="numpy")
        out = subprocess.run(
            [sys.executable, "-c", "import tensyl; print(tensyl.active_backend())"],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        assert out.stdout.strip() == "numpy"


class TestAgreement:
    def test_matmul_agreement(self, rng, restore_backend):
        a = rng.uniform(-1, 1, (7, 5))
        b = rng.uniform(-1, 1, (5, 9))
        backend.set_backend("numpy")
        want = backend.matmul(a, b)
        backend.set_backend("numba")
        got = backend.matmul(a, b)
        assert np.allclose(got, want, atol=1e-13)

    def test_einstein_product_agreement(self, rng, restore_backend):
        x = random_tensor(rng, (3, 2), (2, 2))
        y = random_tensor(rng, (2, 2), (4,))
        backend.set_backend("numpy")
        want = tc.einstein_product(x, y, 2)
        backend.set_backend("numba")
        got = tc.einstein_product(x, y, 2)
        assert np.allclose(got.data, want.data, atol=1e-13)

    def test_solver_agreement(self, restore_backend):
        from tensyl import solve_min_norm
        from tensyl.instances import random_consistent

        results = {}
        for name in ("numpy", "numba"):
            backend.set_backend(name)
            rng = np.random.default_rng(4)
            problem, _ = random_consistent(rng, (2, 2), (3,), shift=2.0)
            results[name] = solve_min_norm(problem)
        a, b = results["numpy"], results["numba"]
        assert a.status == b.status
        assert tc.fro_norm(tc.subtract(a.solution, b.solution)) < 1e-10
