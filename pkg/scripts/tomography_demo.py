"""Five-link network tomography with one corrupted path measurement.

Prints U and shows that the recovered block averages do not depend on which
path the adversary corrupts.
"""
import numpy as np

from robustproj import ProblemSpec, recover, robust_projector

A = np.array([
    [1, 1, 1, 0, 0],
    [0, 0, 0, 1, 1],
    [1, 1, 1, 1, 1],
    [1, 1, 1, 0, 0],
    [0, 0, 0, 1, 1],
], dtype=float)


def main():
    spec = ProblemSpec(A, q=1)
    proj = robust_projector(spec)
    np.set_printoptions(precision=4, suppress=True)
    print("U =")
    print(proj.U)
    print(f"rank {proj.rank}, subsets {proj.subsets_processed}")

    x_star = np.array([1.0, 2.0, 3.0, 10.0, 20.0])
    for row in range(A.shape[0]):
        y = A @ x_star
        y[row] += 100.0
        rset = recover(spec, y, proj=proj)
        print(f"corrupt path {row}: x_hat = {rset.anchor}, U x_hat = {rset.projected_anchor}")


if __name__ == "__main__":
    main()
