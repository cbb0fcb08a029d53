"""
Banded algebra for Hermitian tridiagonal matrices.

A matrix is given by its real diagonal ``d`` (length N) and upper off-diagonal
``e`` (length N-1, real or complex); the lower off-diagonal is ``conj(e)``.
Nothing is ever expanded to a dense N×N array.
"""
import numpy as np


def tridiagonal_apply(diagonal: np.ndarray, off_diagonal: np.ndarray, operand: np.ndarray) -> np.ndarray:
    """Left-multiply a vector or the columns of a matrix by H = tridiag(e*, d, e)"""
    upper = off_diagonal
    lower = np.conj(off_diagonal)
    if operand.ndim == 1:
        d = diagonal
    else:
        d = diagonal[:, np.newaxis]
        upper = upper[:, np.newaxis]
        lower = lower[:, np.newaxis]

    result = d * operand
    result[:-1] += upper * operand[1:]
    result[1:] += lower * operand[:-1]
    return result


def tridiagonal_commutator(diagonal: np.ndarray, off_diagonal: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """[H, ρ] = Hρ − ρH in O(N²) operations.

    H is Hermitian, so ρH = (H ρ†)† holds for any ρ, Hermitian or not.
    """
    left = tridiagonal_apply(diagonal, off_diagonal, rho)
    right = tridiagonal_apply(diagonal, off_diagonal, rho.conj().T).conj().T
    return left - right


def tridiagonal_dense(diagonal: np.ndarray, off_diagonal: np.ndarray) -> np.ndarray:
    """Dense copy, for inspection and tests only"""
    return np.diag(diagonal) + np.diag(off_diagonal, 1) + np.diag(np.conj(off_diagonal), -1)
