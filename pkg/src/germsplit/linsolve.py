"""Sparse exact Gaussian elimination over the rationals.

Rows are dicts mapping column index to nonzero Fraction.  Used by the
independent linear-system oracle and nowhere else, so the eigenbasis
machinery cannot leak into it.
"""

from __future__ import annotations

from fractions import Fraction


class InconsistentSystem(Exception):
    pass


def _reduce(rows, rhs=None):
    """Full reduced row echelon form.  Returns (echelon, pivots) where
    echelon is a list of (pivot_col, row_dict, rhs_value) and pivots the
    pivot columns in elimination order.  Raises InconsistentSystem when a
    zero row meets a nonzero right-hand side."""
    work = []
    for i, row in enumerate(rows):
        r = {c: v for c, v in row.items() if v}
        b = rhs[i] if rhs is not None else Fraction(0)
        work.append((r, b))
    echelon = []
    pivots = []
    while True:
        best = -1
        best_key = None
        for i, (r, _) in enumerate(work):
            if not r:
                continue
            key = (min(r), len(r))
            if best_key is None or key < best_key:
                best_key = key
                best = i
        if best < 0:
            break
        row, b = work.pop(best)
        col = min(row)
        inv = 1 / row[col]
        row = {c: v * inv for c, v in row.items()}
        b = b * inv
        for target in (work, echelon):
            for idx in range(len(target)):
                if target is work:
                    tr, tb = target[idx]
                else:
                    _, tr, tb = target[idx]
                factor = tr.get(col)
                if not factor:
                    continue
                for c, v in row.items():
                    cur = tr.get(c)
                    if cur is None:
                        tr[c] = -factor * v
                    else:
                        cur = cur - factor * v
                        if cur:
                            tr[c] = cur
                        else:
                            del tr[c]
                tb = tb - factor * b
                if target is work:
                    target[idx] = (tr, tb)
                else:
                    target[idx] = (target[idx][0], tr, tb)
        echelon.append((col, row, b))
        pivots.append(col)
    if rhs is not None:
        for r, b in work:
            if not r and b:
                raise InconsistentSystem("no exact solution")
    return echelon, pivots


def solve_system(rows, rhs):
    """Particular solution of A x = b with free variables set to zero.

    Returns (x, free_cols) where x maps columns to nonzero values and
    free_cols lists the columns not pinned by a pivot (among those that
    appear in the matrix).  Raises InconsistentSystem when unsolvable.
    """
    echelon, pivots = _reduce(rows, rhs)
    pivot_set = set(pivots)
    seen = set()
    for row in rows:
        seen.update(row)
    free = sorted(seen - pivot_set)
    x = {}
    for col, _row, b in echelon:
        if b:
            x[col] = b
    return x, free


def nullspace(rows, ncols):
    """Basis of the exact nullspace of A as sparse column vectors."""
    echelon, pivots = _reduce(rows)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = {f: Fraction(1)}
        for col, row, _b in echelon:
            v = row.get(f)
            if v:
                vec[col] = -v
        basis.append(vec)
    return basis


def rowspace_basis(rows):
    """Echelon basis of the row space as sparse vectors."""
    echelon, _ = _reduce(rows)
    return [row for _col, row, _b in echelon]
