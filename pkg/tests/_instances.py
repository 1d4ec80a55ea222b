"""Matrices from the worked examples and generators for test instances."""
import numpy as np

# 5 x 2: three copies of e1, two of e2
EXAMPLE_5x2 = np.array([
    [1.0, 0.0],
    [1.0, 0.0],
    [1.0, 0.0],
    [0.0, 1.0],
    [0.0, 1.0],
])

# network tomography: columns are links, rows are paths
TOMOGRAPHY = np.array([
    [1.0, 1.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0, 1.0],
    [1.0, 1.0, 1.0, 1.0, 1.0],
    [1.0, 1.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0, 1.0],
])

TOMOGRAPHY_U = np.block([
    [np.full((3, 3), 1 / 3), np.zeros((3, 2))],
    [np.zeros((2, 3)), np.full((2, 2), 1 / 2)],
])


def rng(seed):
    return np.random.default_rng(seed)


def structured_matrix(gen, m, n):
    """m x n matrix whose rows cluster in a few random low-dimensional subspaces.

    Groups with many rows survive the deletion of 2q of them, so the robust
    subspace is typically neither {0} nor all of R^n.
    """
    n_groups = int(gen.integers(1, min(n, m) + 1))
    dims = gen.integers(1, max(2, n // n_groups) + 1, size=n_groups)
    bases = [gen.standard_normal((int(d), n)) for d in dims]
    labels = gen.integers(0, n_groups, size=m)
    rows = []
    for lab in labels:
        B = bases[lab]
        coef = gen.standard_normal(B.shape[0])
        rows.append(coef @ B)
    A = np.array(rows)
    # occasional generic row
    if m > 2 and gen.random() < 0.3:
        A[gen.integers(m)] = gen.standard_normal(n)
    return A


def random_instance(seed, m, n, q, magnitude=10.0, structured=False):
    """(A, x_star, e, y) with a q-sparse e of the given magnitude."""
    gen = rng(seed)
    A = structured_matrix(gen, m, n) if structured else gen.standard_normal((m, n))
    x_star = gen.standard_normal(n)
    e = np.zeros(m)
    if q:
        supp = gen.choice(m, size=q, replace=False)
        e[supp] = gen.choice([-1.0, 1.0], size=q) * magnitude
    return A, x_star, e, A @ x_star + e


def ambiguity_members(A, q, gen, count):
    """Random kernel vectors of random A_T with |T| = m - 2q."""
    m, n = A.shape
    out = []
    for _ in range(count):
        T = np.sort(gen.choice(m, size=m - 2 * q, replace=False))
        _, s, vt = np.linalg.svd(A[T], full_matrices=True)
        r = int(np.sum(s > max(A[T].shape) * np.finfo(float).eps * s[0])) if s[0] > 0 else 0
        K = vt[r:]
        if K.shape[0] == 0:
            out.append(np.zeros(n))
        else:
            out.append(gen.standard_normal(K.shape[0]) @ K)
    return out
