"""Exact dimension of the unitary stabilizer of a pattern subspace.

For a proper pattern I the traceless matrices vanishing on I form a subspace
stabilized under conjugation by a closed subgroup of U(n).  The dimension of
that subgroup equals the dimension of its Lie algebra

    {X skew-hermitian : [X, A] stays in the subspace for every A in it},

which is the kernel of an integer linear system in the n^2 real parameters of
a skew-hermitian matrix.  The kernel dimension is computed exactly by
fraction-free integer elimination, so no rank tolerance enters the
classification tables.
"""

from __future__ import annotations

from .patterns import Pattern


def traceless_basis(I: Pattern, n: int) -> list[list[list[int]]]:
    """Integer matrices spanning (over the complex field) the traceless
    matrices vanishing on I: elementary matrices at the free off-diagonal
    cells plus consecutive differences of the free diagonal cells."""
    I.check_within(n)
    pos = set(I)
    mats = []
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            if k != l and (k, l) not in pos:
                M = [[0] * n for _ in range(n)]
                M[k - 1][l - 1] = 1
                mats.append(M)
    free_diag = [i for i in range(1, n + 1) if (i, i) not in pos]
    for a, b in zip(free_diag, free_diag[1:]):
        M = [[0] * n for _ in range(n)]
        M[a - 1][a - 1] = 1
        M[b - 1][b - 1] = -1
        mats.append(M)
    return mats


def _param_index(n: int):
    """Real coordinates on the skew-hermitian matrices: first the n diagonal
    imaginary parts, then (re, im) for each cell above the diagonal."""
    idx = {}
    t = 0
    for k in range(1, n + 1):
        idx[("c", k)] = t
        t += 1
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            idx[("a", k, l)] = t
            idx[("b", k, l)] = t + 1
            t += 2
    return idx, t


def constraint_rows(I: Pattern, n: int) -> list[tuple[int, ...]]:
    """Integer rows of the system whose kernel is the stabilizer algebra.

    For each basis matrix A of the pattern subspace and each position (i, j)
    of I, the entry [X, A]_{ij} must vanish; its real and imaginary parts are
    integer linear forms in the skew-hermitian parameters.
    """
    idx, nparams = _param_index(n)
    rows: set[tuple[int, ...]] = set()
    positions = list(I)
    for A in traceless_basis(I, n):
        for (i, j) in positions:
            # weight of X_{p,q} inside [X, A]_{ij} = sum_t X_it A_tj - A_it X_tj
            weight: dict[tuple[int, int], int] = {}
            for t in range(1, n + 1):
                w = A[t - 1][j - 1]
                if w:
                    weight[(i, t)] = weight.get((i, t), 0) + w
                w = A[i - 1][t - 1]
                if w:
                    weight[(t, j)] = weight.get((t, j), 0) - w
            re = [0] * nparams
            im = [0] * nparams
            for (p, q), w in weight.items():
                if p == q:
                    im[idx[("c", p)]] += w
                elif p < q:
                    re[idx[("a", p, q)]] += w
                    im[idx[("b", p, q)]] += w
                else:
                    re[idx[("a", q, p)]] -= w
                    im[idx[("b", q, p)]] += w
            for row in (re, im):
                if any(row):
                    # canonical sign so duplicate constraints collapse
                    for v in row:
                        if v:
                            if v < 0:
                                row = [-x for x in row]
                            break
                    rows.add(tuple(row))
    return sorted(rows)


def integer_rank(rows, ncols: int) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    rank = 0
    prev = 1
    top = 0
    for col in range(ncols):
        piv = None
        for r in range(top, len(m)):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[top], m[piv] = m[piv], m[top]
        pr = m[top]
        pv = pr[col]
        # every row below is updated, even with a zero multiplier: the
        # fraction-free scheme needs the uniform rescaling for later
        # divisions to stay exact
        for r in range(top + 1, len(m)):
            row = m[r]
            f = row[col]
            for c in range(col + 1, ncols):
                row[c] = (row[c] * pv - f * pr[c]) // prev
            row[col] = 0
        prev = pv
        top += 1
        rank += 1
        if top == len(m):
            break
    return rank


def stabilizer_dim(I: Pattern, n: int) -> int:
    """Real dimension of the stabilizer of the pattern subspace in U(n)."""
    if not I.is_proper(n):
        raise ValueError("stabilizer dimension needs a proper pattern")
    rows = constraint_rows(I, n)
    return n * n - integer_rank(rows, n * n)


def is_defective(I: Pattern, n: int) -> bool:
    """True when the stabilizer dimension exceeds n^2 - 2|I|; such patterns
    cannot be universal."""
    return stabilizer_dim(I, n) > n * n - 2 * len(I)


def float_system_rank(I: Pattern, n: int, tol: float = 1e-8) -> int:
    """Floating-point rank of the same system, for cross-validation only."""
    import numpy as np

    rows = constraint_rows(I, n)
    if not rows:
        return 0
    return int(np.linalg.matrix_rank(np.array(rows, dtype=float), tol=tol))
