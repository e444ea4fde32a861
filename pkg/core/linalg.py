"""
Exact linear algebra helpers over galois FieldArrays
"""
import itertools
import logging
from math import comb
from typing import Iterator, List, Type

import galois
import numpy as np

from utils.constants import SUBSET_CHUNK

logger = logging.getLogger(__name__)


def rank(matrix: galois.FieldArray) -> int:
    if matrix.size == 0:
        return 0
    return int(np.linalg.matrix_rank(matrix))


def empty_matrix(gf: Type[galois.FieldArray], cols: int) -> galois.FieldArray:
    return gf.Zeros((0, cols))


def null_space(matrix: galois.FieldArray, cols: int = None) -> galois.FieldArray:
    """Basis of {x : matrix · xᵀ = 0} as rows; (0, cols) when trivial."""
    gf = type(matrix)
    cols = matrix.shape[1] if cols is None else cols
    if matrix.shape[0] == 0:
        return gf.Identity(cols)
    if rank(matrix) == cols:
        return empty_matrix(gf, cols)
    return matrix.null_space()


def independent_rows(matrix: galois.FieldArray) -> galois.FieldArray:
    """
    Top-down selection of pivot rows.

    Args:
        matrix: Rows in priority order

    Returns:
        FieldArray: Original rows that are independent of the rows above them,
            in their original order
    """
    gf = type(matrix)
    kept: List[int] = []
    current = 0
    for index in range(matrix.shape[0]):
        candidate = matrix[kept + [index]]
        candidate_rank = rank(candidate)
        if candidate_rank > current:
            kept.append(index)
            current = candidate_rank
    if not kept:
        return empty_matrix(gf, matrix.shape[1])
    return matrix[kept]


def batch_rank(stack: galois.FieldArray) -> np.ndarray:
    """
    Ranks of a (batch, rows, cols) stack of matrices by simultaneous elimination.

    Args:
        stack: Matrices over one field

    Returns:
        np.ndarray: Rank of every matrix in the batch
    """
    gf = type(stack)
    work = stack.copy()
    batch, rows, cols = work.shape
    ranks = np.zeros(batch, dtype=np.int64)
    if rows == 0 or cols == 0 or batch == 0:
        return ranks

    index = np.arange(batch)
    row_ids = np.arange(rows)
    for col in range(cols):
        column = work[:, :, col].view(np.ndarray)
        candidates = (column != 0) & (row_ids[None, :] >= ranks[:, None])
        found = candidates.any(axis=1)
        if not found.any():
            continue
        target = np.minimum(ranks, rows - 1)
        pivot = np.where(found, candidates.argmax(axis=1), target)

        # swap pivot rows into position
        top = work[index, target].copy()
        chosen = work[index, pivot].copy()
        work[index, target] = chosen
        work[index, pivot] = top

        pivot_rows = work[index, target]
        pivot_values = pivot_rows[:, col].view(np.ndarray)
        divisor = gf(np.where(found, pivot_values, 1))
        below = (row_ids[None, :] > target[:, None]) & found[:, None]
        factors = (work[:, :, col] / divisor[:, None]) * gf(below.astype(np.int64))
        work = work - factors[:, :, None] * pivot_rows[:, None, :]
        ranks += found
    return ranks


def subset_chunks(n: int, size: int, chunk: int = SUBSET_CHUNK) -> Iterator[np.ndarray]:
    """Lexicographic size-subsets of range(n) as (≤chunk, size) index arrays."""
    combos = itertools.combinations(range(n), size)
    while True:
        block = list(itertools.islice(combos, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(len(block), size)


def first_dependent_subset(matrix: galois.FieldArray, size: int):
    """
    First column subset (lexicographic) of the given size whose columns are dependent.

    Returns:
        Tuple: (subset or None, number of subsets checked)
    """
    rows = matrix.shape[0]
    checked = 0
    if size > rows:
        return tuple(range(size)), 1
    for subsets in subset_chunks(matrix.shape[1], size):
        # (rows, batch, size) -> (batch, rows, size)
        stack = np.transpose(matrix[:, subsets], (1, 0, 2))
        ranks = batch_rank(stack)
        dependent = np.nonzero(ranks < size)[0]
        if dependent.size:
            checked += int(dependent[0]) + 1
            return tuple(int(c) for c in subsets[dependent[0]]), checked
        checked += len(subsets)
    return None, checked


def subset_work(n: int, size: int, rows: int) -> int:
    """Elementary operations for eliminating every size-subset of n columns."""
    return comb(n, size) * rows * size * size


def messages(gf: Type[galois.FieldArray], k: int, start: int, stop: int) -> galois.FieldArray:
    """Messages numbered start..stop-1 as base-q digit rows of length k."""
    numbers = np.arange(start, stop, dtype=np.int64)
    weights = gf.order ** np.arange(k, dtype=np.int64)
    digits = (numbers[:, None] // weights[None, :]) % gf.order
    return gf(digits)
