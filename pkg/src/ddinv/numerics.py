"""Shared numerical helpers."""

import numpy as np
import scipy.linalg

RANK_TOL_FACTOR = 1e-9


def numerical_rank(mat) -> int:
    """Rank of a dense matrix via column-pivoted QR.

    Counts diagonal entries of R above RANK_TOL_FACTOR times the largest
    diagonal magnitude. Empty and zero matrices have rank 0.
    """
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    if mat.size == 0:
        return 0
    r = scipy.linalg.qr(mat, mode="r", pivoting=True)[0]
    diag = np.abs(np.diag(r))
    if diag.size == 0 or diag[0] == 0.0:
        return 0
    return int(np.sum(diag > RANK_TOL_FACTOR * diag[0]))
