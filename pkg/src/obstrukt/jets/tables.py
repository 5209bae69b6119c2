"""Dense multi-index tables for truncated Taylor arithmetic.

Coefficients of a jet are stored in a flat array ordered by total degree
(graded layout), lexicographically within each degree.  Truncating a jet to a
lower order is then a prefix slice, and the multiplication kernel is a fixed
gather/scatter over precomputed index triples.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

import numpy as np


def _exponents(nvars: int, degree: int):
    """All exponent tuples of the given total degree, lexicographic."""
    if degree == 0:
        return [(0,) * nvars]
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


class JetTable:
    """Index bookkeeping for jets with a fixed (nvars, order)."""

    def __init__(self, nvars: int, order: int):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        if order < 0:
            raise ValueError("order must be >= 0")
        self.nvars = nvars
        self.order = order
        exps = []
        offsets = [0]
        for d in range(order + 1):
            exps.extend(_exponents(nvars, d))
            offsets.append(len(exps))
        self.exps = np.array(exps, dtype=np.int64)
        self.offsets = np.array(offsets, dtype=np.int64)
        self.size = len(exps)
        self.position = {tuple(e): i for i, e in enumerate(exps)}
        self.degrees = np.repeat(
            np.arange(order + 1), np.diff(self.offsets)
        ).astype(np.int64)
        self._mul_triples = None
        self._deriv_maps = {}

    def size_at(self, order: int) -> int:
        return int(self.offsets[order + 1])

    def mul_triples(self):
        """(I, J, K) with out[K] += a[I] * b[J] over all degree-compatible pairs."""
        if self._mul_triples is None:
            I, J, K = [], [], []
            for i in range(self.size):
                di = self.degrees[i]
                ei = self.exps[i]
                for j in range(self.offsets[self.order - di + 1]):
                    I.append(i)
                    J.append(j)
                    K.append(self.position[tuple(ei + self.exps[j])])
            self._mul_triples = (
                np.array(I, dtype=np.int32),
                np.array(J, dtype=np.int32),
                np.array(K, dtype=np.int32),
            )
        return self._mul_triples

    def deriv_map(self, var: int):
        """(src, fac): d/dx_var maps coeffs c to fac * c[src] on the order-1 table."""
        if var not in self._deriv_maps:
            small = jet_table(self.nvars, self.order - 1)
            src = np.empty(small.size, dtype=np.int64)
            fac = np.empty(small.size, dtype=np.float64)
            for i in range(small.size):
                e = list(small.exps[i])
                e[var] += 1
                src[i] = self.position[tuple(e)]
                fac[i] = e[var]
            self._deriv_maps[var] = (src, fac)
        return self._deriv_maps[var]


@lru_cache(maxsize=None)
def jet_table(nvars: int, order: int) -> JetTable:
    return JetTable(nvars, order)


def table_size(nvars: int, order: int) -> int:
    return comb(order + nvars, nvars)
