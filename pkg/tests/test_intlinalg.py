import random

import numpy as np

from orcohom.intlinalg import (
    cokernel_data,
    det_bareiss_int,
    hnf,
    int_matrix,
    kernel_basis,
    rank,
    snf_invariants,
)

from oracles import det_cofactor, rank_over_Q, torsion_via_minor_gcd


def random_matrix(rng, rows, cols, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def test_hnf_rank_matches_fraction_elimination():
    rng = random.Random(101)
    for _ in range(40):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = random_matrix(rng, rows, cols)
        assert rank(int_matrix(m, cols)) == rank_over_Q(m)


def test_snf_matches_minor_gcd_oracle():
    rng = random.Random(202)
    for _ in range(30):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = random_matrix(rng, rows, cols)
        free, torsion = cokernel_data(int_matrix(m, cols), cols)
        ofree, otorsion = torsion_via_minor_gcd(m, cols)
        assert (free, torsion) == (ofree, otorsion)


def test_snf_worked_examples():
    assert cokernel_data(int_matrix([[2]], 1), 1) == (0, [2])
    assert cokernel_data(np.zeros((0, 3), dtype=object), 3) == (3, [])
    m = int_matrix([[2, 4, 4], [-6, 6, 12], [10, 4, 16]], 3)
    assert snf_invariants(m) == [2, 2, 156]


def test_kernel_basis_annihilates():
    rng = random.Random(303)
    for _ in range(25):
        rows, cols = rng.randint(1, 5), rng.randint(1, 6)
        m = int_matrix(random_matrix(rng, rows, cols), cols)
        kern = kernel_basis(m)
        assert kern.shape[0] == cols - rank(m)
        for v in kern:
            prod = m @ v.reshape(-1, 1)
            assert not prod.any()


def test_det_bareiss_matches_cofactor():
    rng = random.Random(404)
    for _ in range(25):
        n = rng.randint(1, 5)
        m = random_matrix(rng, n, n)
        assert det_bareiss_int(int_matrix(m, n)) == det_cofactor(m)


def test_hnf_transform_unimodular():
    rng = random.Random(505)
    for _ in range(10):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = int_matrix(random_matrix(rng, rows, cols), cols)
        h, pivots, u = hnf(m, transform=True)
        assert abs(det_bareiss_int(u)) == 1
        prod = u @ m
        assert (prod[: h.shape[0]] == h).all()
        if h.shape[0] < rows:
            assert not prod[h.shape[0]:].any()
