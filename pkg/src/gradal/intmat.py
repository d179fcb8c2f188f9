"""Exact matrix routines over the integers and rationals.

Matrices are lists of row lists holding plain Python ints (or Fraction in
the rational routines), so every result is exact at any size.  Zero-row
and zero-column shapes come up constantly when the trivial group is
involved; functions that cannot infer a dimension take it explicitly.

Two normal forms are provided with their transforms:

* Smith normal form, used to put group presentations into invariant
  factor form.  U * A * V = D with U, V unimodular and the diagonal of D
  nonnegative with d1 | d2 | ... .
* Column-style Hermite echelon form, used for lattice membership and
  integer linear solving.  A * V = H with V unimodular.
"""

from fractions import Fraction


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def mat_copy(a):
    return [row[:] for row in a]


def mat_mul(a, b, cols_b=None):
    """a @ b.  cols_b is required when b has no rows."""
    m = len(a)
    k = len(a[0]) if m else 0
    if k != len(b) and m:
        raise ValueError(f"shape mismatch: {m}x{k} times {len(b)}x?")
    n = len(b[0]) if b else cols_b
    if n is None:
        raise ValueError("cannot infer column count of empty matrix")
    out = zeros(m, n)
    for i in range(m):
        row = a[i]
        oi = out[i]
        for t in range(k):
            x = row[t]
            if x:
                bt = b[t]
                for j in range(n):
                    oi[j] += x * bt[j]
    return out

def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def transpose(a, ncols=None):
    m = len(a)
    n = len(a[0]) if m else ncols
    if n is None:
        raise ValueError("cannot infer column count of empty matrix")
    return [[a[i][j] for i in range(m)] for j in range(n)]


def _pivot_position(d, m, n, start):
    """Smallest nonzero |entry| in d[start:, start:], ties row-major."""
    best = None
    for i in range(start, m):
        for j in range(start, n):
            v = abs(d[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(a, m=None, n=None):
    """Return (u, d, v) with u*a*v = d in Smith normal form.

    u is m x m, v is n x n, both unimodular.  The diagonal of d is
    nonnegative and forms a divisibility chain; zero entries come last.
    Pivot choice: smallest nonzero absolute value in the working
    submatrix, ties broken row-major.
    """
    m = len(a) if m is None else m
    n = (len(a[0]) if a else 0) if n is None else n
    d = [list(row) for row in a]
    u = identity(m)
    v = identity(n)
    t = 0
    while t < min(m, n):
        pos = _pivot_position(d, m, n, t)
        if pos is None:
            break
        pi, pj = pos
        if pi != t:
            d[t], d[pi] = d[pi], d[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for row in d:
                row[t], row[pj] = row[pj], row[t]
            for row in v:
                row[t], row[pj] = row[pj], row[t]
        # Clear row and column t; restart whenever a remainder shrinks
        # below the pivot, which guarantees termination.
        while True:
            restart = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    for j in range(n):
                        d[i][j] -= q * d[t][j]
                    for j in range(m):
                        u[i][j] -= q * u[t][j]
                    if d[i][t]:
                        restart = True
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    for row in d:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                    if d[t][j]:
                        restart = True
            if restart:
                pos = _pivot_position(d, m, n, t)
                pi, pj = pos
                if pi != t:
                    d[t], d[pi] = d[pi], d[t]
                    u[t], u[pi] = u[pi], u[t]
                if pj != t:
                    for row in d:
                        row[t], row[pj] = row[pj], row[t]
                    for row in v:
                        row[t], row[pj] = row[pj], row[t]
                continue
            # Row and column are clear.  Force divisibility of the rest.
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d[i][j] % d[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(n):
                d[t][j] += d[offender][j]
            for j in range(m):
                u[t][j] += u[offender][j]
        if d[t][t] < 0:
            for j in range(n):
                d[t][j] = -d[t][j]
            for j in range(m):
                u[t][j] = -u[t][j]
        t += 1
    return u, d, v


def hermite_columns(a, m=None, n=None):
    """Column echelon form: a*v = h with v unimodular.

    Returns (h, v, pivots) where pivots is a list of (row, col) with
    strictly increasing rows and cols.  Pivot entries are positive,
    entries left of a pivot in its row are reduced into [0, pivot), and
    every non-pivot column is zero.
    """
    m = len(a) if m is None else m
    n = (len(a[0]) if a else 0) if n is None else n
    h = [list(row) for row in a]
    v = identity(n)
    pivots = []
    p = 0
    for r in range(m):
        if p >= n:
            break
        nz = [j for j in range(p, n) if h[r][j]]
        if not nz:
            continue
        # gcd-combine all nonzero columns at row r into column p.
        j0 = nz[0]
        if j0 != p:
            for row in h:
                row[p], row[j0] = row[j0], row[p]
            for row in v:
                row[p], row[j0] = row[j0], row[p]
        for j in range(p + 1, n):
            while h[r][j]:
                if abs(h[r][j]) < abs(h[r][p]):
                    for row in h:
                        row[p], row[j] = row[j], row[p]
                    for row in v:
                        row[p], row[j] = row[j], row[p]
                q = h[r][j] // h[r][p]
                for row in h:
                    row[j] -= q * row[p]
                for row in v:
                    row[j] -= q * row[p]
        if h[r][p] < 0:
            for row in h:
                row[p] = -row[p]
            for row in v:
                row[p] = -row[p]
        for j in range(p):
            q = h[r][j] // h[r][p]
            if q:
                for row in h:
                    row[j] -= q * row[p]
                for row in v:
                    row[j] -= q * row[p]
        pivots.append((r, p))
        p += 1
    return h, v, pivots


def solve_int(a, b, m=None, n=None):
    """One integer solution x of a*x = b, or None.

    Goes through the column echelon form, so the solution picked is
    deterministic for a given a.
    """
    m = len(a) if m is None else m
    n = (len(a[0]) if a else 0) if n is None else n
    h, v, pivots = hermite_columns(a, m, n)
    residual = list(b)
    y = [0] * n
    for (r, c) in pivots:
        val = residual[r]
        if val % h[r][c]:
            return None
        q = val // h[r][c]
        y[c] = q
        if q:
            for i in range(r, m):
                residual[i] -= q * h[i][c]
    if any(residual):
        return None
    return mat_vec(v, y)


def kernel_int(a, m=None, n=None):
    """Basis (list of length-n vectors) of the integer kernel of a."""
    m = len(a) if m is None else m
    n = (len(a[0]) if a else 0) if n is None else n
    u, d, v = smith_normal_form(a, m, n)
    basis = []
    for j in range(n):
        if j >= m or d[j][j] == 0:
            basis.append([v[i][j] for i in range(n)])
    return basis


def inverse_unimodular(u):
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(u)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(u)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col])
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n, 2 * n):
            x = a[i][j]
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(int(x))
        out.append(row)
    return out


def solve_rational(a, b, ncols=None):
    """One rational solution x of a*x = b, or None.  Deterministic."""
    m = len(a)
    n = (len(a[0]) if a else 0) if ncols is None else ncols
    rows = [[Fraction(x) for x in row] + [Fraction(bv)] for row, bv in zip(a, b)]
    piv_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rows[i][n]:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][n]
    return x


def nullspace_rational(a, ncols=None):
    """Basis of the rational nullspace of a, as Fraction vectors."""
    m = len(a)
    n = (len(a[0]) if a else 0) if ncols is None else ncols
    rows = [[Fraction(x) for x in row] for row in a]
    piv_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in piv_cols]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for i, c in enumerate(piv_cols):
            vec[c] = -rows[i][fc]
        basis.append(vec)
    return basis
