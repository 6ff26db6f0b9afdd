"""Exact linear algebra over a black-box field.

Matrices are lists of lists of raw field elements; every function takes the
field context as first argument.  Nothing here is asymptotically clever:
plain Gaussian elimination is enough at this library's problem sizes, and it
is exact.
"""


def mat_zero(F, rows, cols):
    z = F.zero()
    return [[z] * cols for _ in range(rows)]


def mat_identity(F, n):
    m = mat_zero(F, n, n)
    one = F.one()
    for i in range(n):
        m[i][i] = one
    return m


def mat_copy(a):
    return [row[:] for row in a]


def mat_add(F, a, b):
    return [[F.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(F, a, b):
    return [[F.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(F, c, a):
    return [[F.mul(c, x) for x in row] for row in a]


def mat_mul(F, a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = mat_zero(F, rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if F.is_zero(c):
                continue
            bk = b[k]
            for j in range(cols):
                if not F.is_zero(bk[j]):
                    oi[j] = F.add(oi[j], F.mul(c, bk[j]))
    return out


def mat_vec(F, a, v):
    out = []
    for row in a:
        acc = F.zero()
        for c, x in zip(row, v):
            if not (F.is_zero(c) or F.is_zero(x)):
                acc = F.add(acc, F.mul(c, x))
        out.append(acc)
    return out


def vec_add(F, u, v):
    return [F.add(x, y) for x, y in zip(u, v)]


def vec_sub(F, u, v):
    return [F.sub(x, y) for x, y in zip(u, v)]


def vec_scale(F, c, v):
    return [F.mul(c, x) for x in v]


def vec_is_zero(F, v):
    return all(F.is_zero(x) for x in v)


def mat_transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def rref(F, a):
    """Reduced row echelon form.  Returns (R, pivot column list)."""
    m = mat_copy(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if not F.is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and not F.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def mat_rank(F, a):
    return len(rref(F, a)[1])


def kernel_basis(F, a):
    """Basis of the right kernel {v : a v = 0}, as a list of vectors."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if cols == 0:
        return []
    r, pivots = rref(F, a)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [F.zero()] * cols
        v[fc] = F.one()
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(r[i][fc])
        basis.append(v)
    return basis


def solve_right(F, a, b):
    """One solution v of a v = b, or None if inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    r, pivots = rref(F, aug)
    if cols in pivots:
        return None
    v = [F.zero()] * cols
    for i, pc in enumerate(pivots):
        v[pc] = r[i][cols]
    return v


def mat_inv(F, a):
    """Inverse of a square matrix, or None if singular."""
    n = len(a)
    aug = [a[i][:] + mat_identity(F, n)[i] for i in range(n)]
    r, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in r[:n]]


def mat_det(F, a):
    n = len(a)
    m = mat_copy(a)
    det = F.one()
    for c in range(n):
        pr = None
        for i in range(c, n):
            if not F.is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            return F.zero()
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = F.neg(det)
        det = F.mul(det, m[c][c])
        inv = F.inv(m[c][c])
        for i in range(c + 1, n):
            if not F.is_zero(m[i][c]):
                f = F.mul(inv, m[i][c])
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[c])]
    return det


def row_space_basis(F, a):
    r, pivots = rref(F, a)
    return [r[i] for i in range(len(pivots))]


def in_row_space(F, basis_rref, pivots, v):
    """Membership test against a precomputed rref basis."""
    v = list(v)
    for i, pc in enumerate(pivots):
        if not F.is_zero(v[pc]):
            c = v[pc]
            v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, basis_rref[i])]
    return all(F.is_zero(x) for x in v)


def coordinates_in_basis(F, basis, v):
    """Coordinates of v in the span of `basis` (rows), or None."""
    cols = len(v)
    a = [[basis[j][i] for j in range(len(basis))] for i in range(cols)]
    return solve_right(F, a, list(v))
