"""Row and matrix helpers over an ambient algebra.

An *algebra* is anything exposing ``zero``, ``one``, ``contains``,
``is_unit`` and ``inverse`` (:class:`~reeslike.poly.PolyRing` or
:class:`~reeslike.rees.ReesCtx`). Matrices are lists of row lists.

Elementary operations follow one convention everywhere: the op ``(i, j, lam)``
is the matrix e_ij(lam) = I + lam*E_ij, acting on rows from the right, so
``v . e_ij(lam)`` adds ``lam * v[i]`` to ``v[j]``.
"""

from __future__ import annotations


def identity(alg, n: int) -> list[list]:
    zero, one = alg.zero, alg.one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def unit_row(alg, n: int, k: int = 0) -> list:
    return [alg.one if i == k else alg.zero for i in range(n)]


def copy_matrix(m) -> list[list]:
    return [list(row) for row in m]


def mat_mul(a, b, alg) -> list[list]:
    n, k, p = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(p):
            acc = alg.zero
            for t in range(k):
                x = ai[t]
                if x:
                    y = b[t][j]
                    if y:
                        acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def row_times(v, m, alg) -> list:
    return mat_mul([list(v)], m, alg)[0]


def dot(u, v, alg):
    acc = alg.zero
    for x, y in zip(u, v):
        acc = acc + x * y
    return acc


def is_identity(m, alg) -> bool:
    return m == identity(alg, len(m))


def det(m, alg):
    """Determinant by cofactor expansion memoized on column subsets.

    Division-free, so valid over any commutative ring; fine for n <= ~12.
    """
    n = len(m)
    if n == 0:
        return alg.one
    cache: dict[tuple[int, int], object] = {}

    def minor(row: int, cols: int):
        if row == n:
            return alg.one
        key = (row, cols)
        if key in cache:
            return cache[key]
        acc = alg.zero
        sign = 1
        for c in range(n):
            if cols >> c & 1:
                x = m[row][c]
                if x:
                    term = x * minor(row + 1, cols & ~(1 << c))
                    acc = acc + term if sign > 0 else acc - term
                sign = -sign
        cache[key] = acc
        return acc

    return minor(0, (1 << n) - 1)


def map_matrix(m, fn) -> list[list]:
    return [[fn(x) for x in row] for row in m]


def block_diag(m, n: int, alg) -> list[list]:
    """diag(m, I) of size n."""
    out = identity(alg, n)
    for i, row in enumerate(m):
        out[i][: len(row)] = list(row)
    return out


# in-place elementary actions


def op_on_row(v: list, i: int, j: int, lam) -> None:
    """v <- v . e_ij(lam)."""
    if lam and v[i]:
        v[j] = v[j] + lam * v[i]


def op_right(m: list[list], i: int, j: int, lam) -> None:
    """m <- m . e_ij(lam): column j += lam * column i."""
    if not lam:
        return
    for row in m:
        x = row[i]
        if x:
            row[j] = row[j] + x * lam


def op_left(m: list[list], i: int, j: int, lam) -> None:
    """m <- e_ij(lam) . m: row i += lam * row j."""
    if not lam:
        return
    ri, rj = m[i], m[j]
    for c, x in enumerate(rj):
        if x:
            ri[c] = ri[c] + lam * x
