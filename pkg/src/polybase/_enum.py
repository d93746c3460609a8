# Vectorised enumeration of weak compositions.
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def _compositions(total, parts):
    if parts == 1:
        out = np.array([[total]], dtype=np.int64)
    else:
        blocks = []
        for first in range(total + 1):
            rest = _compositions(total - first, parts - 1)
            head = np.full((rest.shape[0], 1), first, dtype=np.int64)
            blocks.append(np.hstack([head, rest]))
        out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def compositions(total, parts, lower=None):
    """All x in Z^parts with x >= lower and sum(x) = total, in lex order."""
    if lower is None:
        if total < 0:
            return np.zeros((0, parts), dtype=np.int64)
        return _compositions(total, parts)
    lower = np.asarray(lower, dtype=np.int64)
    rest = total - int(lower.sum())
    if rest < 0:
        return np.zeros((0, parts), dtype=np.int64)
    return _compositions(rest, parts) + lower


def rows_to_tuples(arr):
    return [tuple(int(x) for x in row) for row in arr.tolist()]
