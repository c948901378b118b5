"""Incremental sparse echelon basis over an exact field.

Rows are ``{column: scalar}`` dicts.  Each stored row is normalised so its
leftmost entry (the pivot) is 1; vectors are reduced by sweeping pivots in
increasing column order, which leaves a unique normal form supported on the
non-pivot columns.  Used where dense elimination would be wasteful (monomial
multiples of a few relations).
"""

from __future__ import annotations

import heapq


class SparseEchelon:
    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self) -> list:
        return sorted(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Normal form of ``vec`` modulo the span (a new dict)."""
        v = {c: x for c, x in vec.items() if x}
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            x = v.get(c)
            if not x:
                continue
            row = self.rows.get(c)
            if row is None:
                continue
            for j, y in row.items():
                nv = v.get(j, 0) - x * y
                if nv:
                    v[j] = nv
                    if j not in seen:
                        heapq.heappush(heap, j)
                else:
                    v.pop(j, None)
        return v

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        c = min(v)
        inv = 1 / v[c]
        self.rows[c] = {j: x * inv for j, x in v.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def free_columns(self) -> list:
        return [c for c in range(self.ncols) if c not in self.rows]
