"""Exact linear algebra on small integer matrices."""

from fractions import Fraction


def bareiss(matrix):
    """Fraction-free elimination; returns ``(rank, det)``.

    ``det`` is the exact determinant for square input and None otherwise.
    """
    a = [list(map(int, row)) for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    sign, prev, rank = 1, 1, 0
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        pivot = next((r for r in range(row, nrows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        if pivot != row:
            a[row], a[pivot] = a[pivot], a[row]
            sign = -sign
        for r in range(row + 1, nrows):
            for c in range(col + 1, ncols):
                # exact division is guaranteed by Sylvester's identity
                a[r][c] = (a[r][c] * a[row][col] - a[r][col] * a[row][c]) // prev
            a[r][col] = 0
        prev = a[row][col]
        row += 1
        rank += 1
    det = None
    if nrows == ncols:
        det = sign * prev if rank == nrows else 0
        if nrows == 0:
            det = 1
    return rank, det


def nullspace(matrix):
    """Basis of the rational right nullspace, from the reduced row echelon form."""
    a = [[Fraction(x) for x in row] for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        lead = a[row][col]
        a[row] = [x / lead for x in a[row]]
        for r in range(nrows):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][fc]
        basis.append(v)
    return basis


def det_gf2(matrix):
    """Determinant over the two-element field (entries taken mod 2)."""
    rows = [[x % 2 for x in row] for row in matrix]
    n = len(rows)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return 0
        rows[col], rows[pivot] = rows[pivot], rows[col]
        for r in range(col + 1, n):
            if rows[r][col]:
                rows[r] = [x ^ y for x, y in zip(rows[r], rows[col])]
    return 1
