"""Smith normal form over the integers, exact.

Only the invariant factors are needed (no transform tracking).  Matrices
here are small (tens of rows), so the classic pivot-on-smallest
reduction with Python integers is plenty.
"""

from __future__ import annotations


def invariant_factors(rows: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, positive, each
    dividing the next."""
    m = [list(map(int, r)) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    factors = []
    top = 0
    while top < nr and top < nc:
        # locate the smallest nonzero entry in the remaining block
        pr = pc = -1
        best = None
        for i in range(top, nr):
            for j in range(top, nc):
                v = abs(m[i][j])
                if v and (best is None or v < best):
                    best, pr, pc = v, i, j
        if best is None:
            break
        m[top], m[pr] = m[pr], m[top]
        for r in m:
            r[top], r[pc] = r[pc], r[top]
        if m[top][top] < 0:
            m[top] = [-x for x in m[top]]
        pivot = m[top][top]
        dirty = False
        for i in range(top + 1, nr):
            q = m[i][top] // pivot
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[top])]
            if m[i][top]:
                dirty = True
        for j in range(top + 1, nc):
            q = m[top][j] // pivot
            if q:
                for r in m:
                    r[j] -= q * r[top]
            if m[top][j]:
                dirty = True
        if dirty:
            continue  # remainders left; pick a new pivot in the same block
        # pivot must divide everything below-right; if not, fold the
        # offending row in and restart the block
        offender = None
        for i in range(top + 1, nr):
            for j in range(top + 1, nc):
                if m[i][j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            m[top] = [a + b for a, b in zip(m[top], m[offender])]
            continue
        factors.append(pivot)
        top += 1
    # successive division already holds; normalize defensively
    for k in range(1, len(factors)):
        assert factors[k] % factors[k - 1] == 0, "SNF divisibility broken"
    return factors


def rank(rows: list[list[int]]) -> int:
    if not rows or not rows[0]:
        return 0
    return len(invariant_factors(rows))
