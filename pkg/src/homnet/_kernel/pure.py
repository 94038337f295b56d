"""Pure-Python fraction-free row echelon (Bareiss) over arbitrary integers.

This is the fallback twin of the compiled kernel in ``_speedups``; both must
produce identical output.  Pivoting is deterministic: the first row at or
below the pivot row with a nonzero entry in the pivot column is chosen.
"""

BACKEND = "pure"


def echelon(rows, ncols):
    """Fraction-free row echelon of an integer matrix.

    ``rows`` is a list of row lists which is consumed (copy before calling if
    the input matters).  Returns ``(rows, pivot_cols)`` where the first
    ``len(pivot_cols)`` rows hold the echelon form; entries are exact minors
    of the input, so they stay integral throughout.
    """
    nrows = len(rows)
    prev = 1
    r = 0
    pivot_cols = []
    for c in range(ncols):
        p = r
        while p < nrows and rows[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            row_i = rows[i]
            row_r = rows[r]
            lead = row_i[c]
            if lead == 0:
                # rows untouched by the pivot still pick up the Bareiss scaling
                for j in range(c + 1, ncols):
                    row_i[j] = (piv * row_i[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row_i[j] = (piv * row_i[j] - lead * row_r[j]) // prev
                row_i[c] = 0
        prev = piv
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivot_cols
