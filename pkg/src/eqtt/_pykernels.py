"""Fallback versions of the compiled kernels (same signatures, no extension needed)."""

import numpy as np


def close_subgroup(mul, seed, gens):
    n = mul.shape[0]
    mask = bytearray(n)
    queue = [int(i) for i in np.flatnonzero(seed)]
    for i in queue:
        mask[i] = 1
    if not mask[0]:
        mask[0] = 1
        queue.append(0)
    gens = np.asarray(gens, dtype=np.intp)
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for y in mul[x, gens].tolist():
            if not mask[y]:
                mask[y] = 1
                queue.append(y)
    return np.frombuffer(bytes(mask), dtype=np.uint8).copy()


def transporter_count(conj, h_members, k_mask):
    k_mask = np.asarray(k_mask, dtype=bool)
    return int(np.count_nonzero(k_mask[conj[:, h_members]].all(axis=1)))


def is_normalized_by(conj, members, mask, by):
    mask = np.asarray(mask, dtype=bool)
    return bool(mask[conj[np.ix_(by, members)]].all())
