"""Compiled and pure-Python kernels must agree exactly."""
import itertools

import numpy as np
import pytest

from eacount import kernels
from eacount.ea import gamma_generators, random_element
from eacount.functions import make_rng, random_table

BACKENDS = kernels.available_backends()


def test_backend_selected():
    assert kernels.BACKEND in BACKENDS


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")
class TestAgreement:
    py = BACKENDS["python"]
    cy = BACKENDS.get("cython")

    def test_apply_table(self):
        rng = make_rng(1)
        for dims in [(2, 2, 2), (3, 2, 1), (4, 1, 2)]:
            g = random_element(rng, *dims)
            F = random_table(rng, *dims)
            assert self.py.apply_table(F.table, g.input_map, g.output_map) == \
                self.cy.apply_table(F.table, g.input_map, g.output_map)

    def test_count_fixed(self):
        rng = make_rng(2)
        for dims in [(2, 2, 2), (3, 1, 2), (2, 2, 1)]:
            for _ in range(10):
                g = random_element(rng, *dims)
                args = (g.input_map, g.output_map, dims[0] ** dims[1], dims[0] ** dims[2])
                assert self.py.count_fixed_tables(*args) == self.cy.count_fixed_tables(*args)

    def test_induced_map(self):
        rng = make_rng(3)
        for _ in range(200):
            u = rng.integers(0, 4, 6).tolist()
            v = rng.integers(0, 4, 6).tolist()
            assert self.py.induced_map(u, v, 4) == self.cy.induced_map(u, v, 4)
        assert self.cy.induced_map([0, 1], [2, 3], 4) == [2, 3, -1, -1]
        assert self.cy.induced_map([0, 0], [2, 3], 4) is None

    @pytest.mark.parametrize("dims", [(2, 1, 1), (2, 2, 2), (3, 1, 2), (2, 3, 1)])
    def test_orbit_labels(self, dims):
        q, n, m = dims
        gens = gamma_generators(*dims)
        args = ([g.input_map for g in gens], [g.output_map for g in gens], q**n, q**m)
        la, ca = self.py.orbit_labels(*args)
        lb, cb = self.cy.orbit_labels(*args)
        assert ca == cb
        assert np.array_equal(la, lb)
