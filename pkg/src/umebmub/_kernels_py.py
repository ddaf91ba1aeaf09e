"""Numpy implementations of the hot loops; used when the extension is absent."""
import numpy as np


def hadamard_masks(d):
    if d < 1 or d * d > 40:
        raise ValueError(f"hadamard_masks: unsupported order {d}")
    if d % 2 == 1 and d > 1:
        return np.zeros(0, dtype=np.uint64)
    total = 1 << (d * d)
    rowmask = np.uint64((1 << d) - 1)
    keep = []
    chunk = 1 << 16
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        rows = [(masks >> np.uint64(d * (d - r - 1))) & rowmask for r in range(d)]
        ok = np.ones(masks.shape, dtype=bool)
        for r in range(d):
            for s in range(r + 1, d):
                ok &= np.bitwise_count(rows[r] ^ rows[s]) == d // 2
        keep.append(masks[ok])
    return np.concatenate(keep) if keep else np.zeros(0, dtype=np.uint64)


def overlap_max_deviation(A, B, target):
    if A.shape[0] != B.shape[0]:
        raise ValueError(f"overlap_max_deviation: shapes {A.shape} and {B.shape}")
    dev = np.abs(np.abs(A.conj().T @ B) - target)
    i, j = np.unravel_index(np.argmax(dev), dev.shape)
    return float(dev[i, j]), int(i), int(j)


def gram_det_batch(V, d):
    if V.shape[1] != 2 * d:
        raise ValueError(f"gram_det_batch: rows have length {V.shape[1]}, expected {2 * d}")
    r0 = V[:, :d]
    r1 = V[:, d:]
    n0 = np.einsum("ij,ij->i", r0.conj(), r0).real
    n1 = np.einsum("ij,ij->i", r1.conj(), r1).real
    c = np.einsum("ij,ij->i", r0.conj(), r1)
    return n0 * n1 - np.abs(c) ** 2
