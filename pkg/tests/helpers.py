"""Dense exact-arithmetic oracles, independent of the library's sparse paths."""

from fractions import Fraction
import itertools


def multi_indices(n, legs):
    return list(itertools.product(range(1, n + 1), repeat=legs))


def dense_from_op(op, q0):
    """Dense Fraction matrix of a Laurent-coefficient TensorOp at q = q0."""
    idx = multi_indices(op.n, op.legs)
    pos = {ix: k for k, ix in enumerate(idx)}
    d = len(idx)
    mat = [[Fraction(0)] * d for _ in range(d)]
    for (r, c), coeff in op.entries.items():
        mat[pos[r]][pos[c]] = coeff.evaluate(q0)
    return mat


def dense_standard_R(n, q0):
    """The standard R-matrix built directly from its entry formula."""
    q0 = Fraction(q0)
    lam = q0 - 1 / q0
    idx = multi_indices(n, 2)
    pos = {ix: k for k, ix in enumerate(idx)}
    d = len(idx)
    mat = [[Fraction(0)] * d for _ in range(d)]
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            mat[pos[(a, b)]][pos[(a, b)]] = q0 if a == b else Fraction(1)
            if a > b:
                mat[pos[(b, a)]][pos[(a, b)]] = lam
    return mat


def dense_P(n):
    idx = multi_indices(n, 2)
    pos = {ix: k for k, ix in enumerate(idx)}
    d = len(idx)
    mat = [[Fraction(0)] * d for _ in range(d)]
    for a, b in idx:
        mat[pos[(b, a)]][pos[(a, b)]] = Fraction(1)
    return mat


def dense_mul(A, B):
    d = len(A)
    out = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        Ai = A[i]
        for k in range(d):
            a = Ai[k]
            if a:
                Bk = B[k]
                row = out[i]
                for j in range(d):
                    if Bk[j]:
                        row[j] += a * Bk[j]
    return out


def dense_identity(d):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(d)] for i in range(d)]


def dense_inverse(A):
    """Gauss-Jordan over Fractions; raises ZeroDivisionError when singular."""
    d = len(A)
    M = [list(row) + ident for row, ident in zip(A, dense_identity(d))]
    for k in range(d):
        piv = next((i for i in range(k, d) if M[i][k]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[k], M[piv] = M[piv], M[k]
        inv = Fraction(1) / M[k][k]
        M[k] = [x * inv for x in M[k]]
        for i in range(d):
            if i != k and M[i][k]:
                f = M[i][k]
                M[i] = [x - f * y for x, y in zip(M[i], M[k])]
    return [row[d:] for row in M]


def dense_embed(op_mat, n, op_legs, positions, total):
    """Dense embedding oracle via direct index bookkeeping."""
    src = multi_indices(n, op_legs)
    src_pos = {ix: k for k, ix in enumerate(src)}
    idx = multi_indices(n, total)
    pos = {ix: k for k, ix in enumerate(idx)}
    d = len(idx)
    out = [[Fraction(0)] * d for _ in range(d)]
    rest = [p for p in range(1, total + 1) if p not in positions]
    for row in idx:
        for col in idx:
            if any(row[p - 1] != col[p - 1] for p in rest):
                continue
            r = tuple(row[p - 1] for p in positions)
            c = tuple(col[p - 1] for p in positions)
            out[pos[row]][pos[col]] = op_mat[src_pos[r]][src_pos[c]]
    return out


def dense_rank(rows):
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    col = 0
    width = len(rows[0]) if rows else 0
    while rows and col < width:
        piv = next((i for i, r in enumerate(rows) if r[col]), None)
        if piv is None:
            col += 1
            continue
        rows[0], rows[piv] = rows[piv], rows[0]
        lead = rows[0]
        inv = Fraction(1) / lead[col]
        rows = [rows[0]] + [
            [a - r[col] * inv * b for a, b in zip(r, lead)] if r[col] else r
            for r in rows[1:]
        ]
        rank += 1
        rows = [r for r in rows[1:] if any(r)]
        col += 1
    return rank
