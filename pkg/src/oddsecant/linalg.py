"""Small dense linear algebra over GF(q) on integer codes."""

from __future__ import annotations

from .errors import DivisionByZero
from .field import GF


def rref(F: GF, rows):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    m = [list(r) for r in rows]
    pivots = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, v) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(F: GF, rows) -> int:
    return len(rref(F, rows)[1])


def nullspace(F: GF, rows, ncols: int | None = None):
    """Basis of ``{v : rows . v = 0}``."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(F, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(m[i][fc])
        basis.append(v)
    return basis


def det3(F: GF, a, b, c) -> int:
    """Determinant of the matrix with rows ``a, b, c``."""
    mul, add, sub = F.mul, F.add, F.sub
    t1 = mul(a[0], sub(mul(b[1], c[2]), mul(b[2], c[1])))
    t2 = mul(a[1], sub(mul(b[0], c[2]), mul(b[2], c[0])))
    t3 = mul(a[2], sub(mul(b[0], c[1]), mul(b[1], c[0])))
    return add(sub(t1, t2), t3)


def cross(F: GF, a, b):
    mul, sub = F.mul, F.sub
    return (
        sub(mul(a[1], b[2]), mul(a[2], b[1])),
        sub(mul(a[2], b[0]), mul(a[0], b[2])),
        sub(mul(a[0], b[1]), mul(a[1], b[0])),
    )


def matvec(F: GF, m, v):
    mul, add = F.mul, F.add
    return tuple(add(add(mul(r[0], v[0]), mul(r[1], v[1])), mul(r[2], v[2])) for r in m)


def matmul(F: GF, a, b):
    mul, add = F.mul, F.add
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = 0
            for t in range(k):
                s = add(s, mul(a[i][t], b[t][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def transpose(m):
    return tuple(tuple(r[j] for r in m) for j in range(len(m[0])))


def inverse3(F: GF, m):
    """Inverse of a 3x3 matrix via the adjugate."""
    d = det3(F, *m)
    if d == 0:
        raise DivisionByZero("singular matrix")
    dinv = F.inv(d)
    cols = [cross(F, m[1], m[2]), cross(F, m[2], m[0]), cross(F, m[0], m[1])]
    # rows of the inverse are the columns of the adjugate: inv[i][j] = cols[j][i] / d
    return tuple(tuple(F.mul(cols[j][i], dinv) for j in range(3)) for i in range(3))


def solve(F: GF, a, b):
    """Unique solution of ``a x = b`` for square invertible ``a``."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    m, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise DivisionByZero("singular system")
    return [m[i][n] for i in range(n)]
