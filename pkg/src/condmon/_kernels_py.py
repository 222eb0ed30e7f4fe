"""Numpy fallback for the compiled kernels; same signatures and results."""
import numpy as np

BACKEND = "python"


def _dense(fact, lens):
    n = fact.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.int32)
    k = int(fact.max()) + 1 if fact.size and fact.max() >= 0 else 1
    counts = np.zeros((n, k), dtype=np.int32)
    for i in range(n):
        row = fact[i, : lens[i]]
        np.add.at(counts[i], row, 1)
    return counts


def distance_row(fact, lens, i, _counts=None):
    counts = _dense(fact, lens) if _counts is None else _counts
    common = np.minimum(counts, counts[i]).sum(axis=1)
    return (np.maximum(lens, lens[i]) - common).astype(np.int32)


def distance_matrix(fact, lens):
    fact = np.asarray(fact)
    lens = np.asarray(lens)
    n = fact.shape[0]
    counts = _dense(fact, lens)
    out = np.zeros((n, n), dtype=np.int32)
    for i in range(n):
        out[i] = distance_row(fact, lens, i, counts)
    return out


def bottleneck(D):
    D = np.asarray(D)
    n = D.shape[0]
    if n <= 1:
        return 0
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    key = D[0].astype(np.int64).copy()
    worst = 0
    for _ in range(n - 1):
        masked = np.where(seen, np.iinfo(np.int64).max, key)
        j = int(np.argmin(masked))
        worst = max(worst, int(masked[j]))
        seen[j] = True
        key = np.minimum(key, D[j])
    return worst


def components_at(fact, lens, threshold):
    fact = np.asarray(fact)
    lens = np.asarray(lens)
    n = fact.shape[0]
    counts = _dense(fact, lens)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for i in range(n):
        row = distance_row(fact, lens, i, counts)
        for j in np.nonzero(row[i + 1:] <= threshold)[0]:
            ri, rj = find(i), find(i + 1 + int(j))
            if ri != rj:
                parent[ri] = rj
                comps -= 1
    return comps
