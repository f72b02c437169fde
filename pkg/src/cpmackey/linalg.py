"""Exact matrix algebra over Z, F_q and Z/n.

Matrices are 2-D numpy arrays of dtype ``object`` holding Python ints, so
arithmetic never overflows and empty shapes such as ``(3, 0)`` behave.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .rings import GroundRing


def mat(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Convert nested sequences (or an array) into an object-dtype matrix."""
    if isinstance(rows, np.ndarray) and rows.dtype == object and rows.ndim == 2:
        out = rows
    else:
        arr = np.array(rows, dtype=object)
        if arr.size == 0:
            if shape is None:
                shape = arr.shape if arr.ndim == 2 else (0, 0)
            out = np.zeros(shape, dtype=object)
        else:
            if arr.ndim == 1:
                arr = arr.reshape(1, -1)
            out = np.vectorize(int, otypes=[object])(arr)
    if shape is not None and out.shape != tuple(shape):
        raise ValueError(f"expected shape {shape}, got {out.shape}")
    return out


def col(v: Sequence[int]) -> np.ndarray:
    return mat([[int(x)] for x in v], shape=(len(v), 1))


def zeros(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=object)


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def reduce(A: np.ndarray, ring: GroundRing) -> np.ndarray:
    if ring.modulus:
        return A % ring.modulus
    return A


def is_zero(A: np.ndarray, ring: GroundRing | None = None) -> bool:
    if ring is not None:
        A = reduce(A, ring)
    return not any(x != 0 for x in A.flat)


def equal(A: np.ndarray, B: np.ndarray, ring: GroundRing | None = None) -> bool:
    if A.shape != B.shape:
        return False
    return is_zero(A - B, ring)


def hstack(blocks: Iterable[np.ndarray], nrows: int) -> np.ndarray:
    blocks = list(blocks)
    if not blocks:
        return zeros(nrows, 0)
    return np.concatenate(blocks, axis=1)


def vstack(blocks: Iterable[np.ndarray], ncols: int) -> np.ndarray:
    blocks = list(blocks)
    if not blocks:
        return zeros(0, ncols)
    return np.concatenate(blocks, axis=0)


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    m = sum(b.shape[0] for b in blocks)
    n = sum(b.shape[1] for b in blocks)
    out = zeros(m, n)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    out = zeros(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])
    if out.size:
        out[:, :] = np.kron(A, B)
    return out


def mat_pow(A: np.ndarray, k: int, ring: GroundRing | None = None) -> np.ndarray:
    out = identity(A.shape[0])
    for _ in range(k):
        out = out @ A
        if ring is not None:
            out = reduce(out, ring)
    return out


def det(A) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in mat(A).tolist()]
    n = len(M)
    if n == 0:
        return 1
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# --------------------------------------------------------------------------
# Smith normal form


def _smallest_in(block: np.ndarray) -> tuple[int, int] | None:
    """Position of the nonzero entry of least absolute value (first in row-major order)."""
    if block.size == 0:
        return None
    rows, cols = np.nonzero(block != 0)
    if rows.size == 0:
        return None
    k = int(np.argmin(np.abs(block[rows, cols])))
    return int(rows[k]), int(cols[k])


def smith_normal_form(M, with_inverse: bool = False):
    """Return ``(D, U, V)`` with ``U @ M @ V == D`` in Smith normal form.

    Pivots are the entries of smallest absolute value, ties going to the
    lowest (row, column) index. With ``with_inverse`` the inverse of ``U`` is
    returned as a fourth value.
    """
    A = mat(M).copy()
    m, n = A.shape
    U, V, Ui = identity(m), identity(n), identity(m)

    def swap_rows(i: int, k: int) -> None:
        if i != k:
            A[[i, k], :] = A[[k, i], :]
            U[[i, k], :] = U[[k, i], :]
            Ui[:, [i, k]] = Ui[:, [k, i]]

    def swap_cols(j: int, k: int) -> None:
        if j != k:
            A[:, [j, k]] = A[:, [k, j]]
            V[:, [j, k]] = V[:, [k, j]]

    def add_row(i: int, k: int, c: int) -> None:
        # row_i += c * row_k
        A[i, :] = A[i, :] + c * A[k, :]
        U[i, :] = U[i, :] + c * U[k, :]
        Ui[:, k] = Ui[:, k] - c * Ui[:, i]

    def add_col(j: int, k: int, c: int) -> None:
        A[:, j] = A[:, j] + c * A[:, k]
        V[:, j] = V[:, j] + c * V[:, k]

    for t in range(min(m, n)):
        piv = _smallest_in(A[t:, t:])
        if piv is None:
            break
        swap_rows(t, t + piv[0])
        swap_cols(t, t + piv[1])
        while True:
            dirty = False
            for i in np.nonzero(A[t + 1:, t] != 0)[0]:
                i = int(i) + t + 1
                add_row(i, t, -(A[i, t] // A[t, t]))
                dirty = dirty or A[i, t] != 0
            for j in np.nonzero(A[t, t + 1:] != 0)[0]:
                j = int(j) + t + 1
                add_col(j, t, -(A[t, j] // A[t, t]))
                dirty = dirty or A[t, j] != 0
            if dirty:
                ci = _smallest_in(A[t:, t:t + 1])
                rj = _smallest_in(A[t:t + 1, t + 1:])
                cand = []
                if ci is not None:
                    cand.append((abs(A[t + ci[0], t]), t + ci[0], t))
                if rj is not None:
                    cand.append((abs(A[t, t + 1 + rj[1]]), t, t + 1 + rj[1]))
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            sub = A[t + 1:, t + 1:]
            bad = np.nonzero((sub % A[t, t]) != 0)[0] if sub.size else []
            if len(bad) == 0:
                break
            add_row(t, int(bad[0]) + t + 1, 1)
        if A[t, t] < 0:
            A[t, :] = -A[t, :]
            U[t, :] = -U[t, :]
            Ui[:, t] = -Ui[:, t]
    if with_inverse:
        return A, U, V, Ui
    return A, U, V


def snf_diagonal(M) -> list[int]:
    D = smith_normal_form(M)[0]
    return [D[i, i] for i in range(min(D.shape))]


# --------------------------------------------------------------------------
# Row reduction over F_q


def rref_mod(A, q: int):
    """Reduced row echelon form mod q: returns ``(R, pivots, T)`` with T@A = R."""
    R = mat(A) % q
    m, n = R.shape
    T = identity(m)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        k = next((i for i in range(r, m) if R[i, c] % q), None)
        if k is None:
            continue
        if k != r:
            R[[r, k], :] = R[[k, r], :]
            T[[r, k], :] = T[[k, r], :]
        inv = pow(int(R[r, c]), -1, q)
        R[r, :] = (R[r, :] * inv) % q
        T[r, :] = (T[r, :] * inv) % q
        for i in range(m):
            if i != r and R[i, c] % q:
                f = R[i, c]
                R[i, :] = (R[i, :] - f * R[r, :]) % q
                T[i, :] = (T[i, :] - f * T[r, :]) % q
        pivots.append(c)
        r += 1
    return R, pivots, T


def rank(A, ring: GroundRing) -> int:
    A = mat(A)
    if ring.kind == "F":
        return len(rref_mod(A, ring.modulus)[1])
    if ring.kind == "Z":
        return sum(1 for d in snf_diagonal(A) if d != 0)
    raise ValueError("rank is only defined over Z and fields")


# --------------------------------------------------------------------------
# Solving and kernels


def _solve_integer(A: np.ndarray, b: np.ndarray):
    D, U, V = smith_normal_form(A)
    m, n = A.shape
    c = U @ b
    y = zeros(n, 1)
    for i in range(m):
        d = D[i, i] if i < n else 0
        if d == 0:
            if c[i, 0] != 0:
                return None
        else:
            if c[i, 0] % d:
                return None
            y[i, 0] = c[i, 0] // d
    return V @ y


def _solve_field(A: np.ndarray, b: np.ndarray, q: int):
    n = A.shape[1]
    R, pivots, _ = rref_mod(np.concatenate([A, b], axis=1), q)
    if n in pivots:
        return None
    x = zeros(n, 1)
    for r, c in enumerate(pivots):
        x[c, 0] = R[r, n]
    return x


def solve_linear(A, b, ring: GroundRing):
    """One solution x of ``A x = b`` over ``ring``, or ``None``.

    ``b`` may be a column matrix or a flat sequence; the result has the same
    form. Over Z the Smith form is used, over F_q Gaussian elimination, over
    Z/n the integer system ``[A | nI] (x, y) = b``.
    """
    A = mat(A)
    flat = not (isinstance(b, np.ndarray) and b.ndim == 2)
    bm = col(list(b)) if flat else mat(b)
    if bm.shape != (A.shape[0], 1):
        raise ValueError(f"dimension mismatch: A is {A.shape}, b is {bm.shape}")
    if ring.kind == "Z":
        x = _solve_integer(A, bm)
    elif ring.kind == "F":
        x = _solve_field(A % ring.modulus, bm % ring.modulus, ring.modulus)
    else:
        n = ring.modulus
        aug = np.concatenate([A, n * identity(A.shape[0])], axis=1)
        x = _solve_integer(aug, bm)
        if x is not None:
            x = x[: A.shape[1], :] % n
    if x is None:
        return None
    return [int(v) for v in x[:, 0]] if flat else x


_BIG_PRIME = (1 << 61) - 1


def _rational(a: int, P: int) -> tuple[int, int] | None:
    """Rational reconstruction of a mod P with |num|, den <= sqrt(P/2)."""
    bound = math.isqrt(P // 2)
    r0, r1, s0, s1 = P, a % P, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return r1, s1


def _integer_kernel_modular(A: np.ndarray) -> np.ndarray | None:
    """Saturated kernel basis via a kernel mod a large prime, or None."""
    n = A.shape[1]
    R, pivots, _ = rref_mod(A, _BIG_PRIME)
    free = [c for c in range(n) if c not in pivots]
    vecs = []
    for f in free:
        entries = {f: (1, 1)}
        for r, c in enumerate(pivots):
            if R[r, f]:
                rec = _rational(-R[r, f], _BIG_PRIME)
                if rec is None:
                    return None
                entries[c] = rec
        den = 1
        for _, d in entries.values():
            den = den * d // math.gcd(den, d)
        v = zeros(n, 1)
        for c, (a, d) in entries.items():
            v[c, 0] = a * (den // d)
        if not is_zero(A @ v):
            return None
        vecs.append(v)
    N = hstack(vecs, n)
    if N.shape[1] == 0:
        return N
    D, _, _, Ui = smith_normal_form(N, with_inverse=True)
    if all(D[i, i] == 1 for i in range(N.shape[1])):
        return N
    return Ui[:, : N.shape[1]].copy()


def kernel(A, ring: GroundRing) -> np.ndarray:
    """Columns generating the kernel of A (a basis over Z and over fields)."""
    A = mat(A)
    m, n = A.shape
    if ring.kind == "Z":
        if n > 12:
            K = _integer_kernel_modular(A)
            if K is not None:
                return K
        D, _, V = smith_normal_form(A)
        r = sum(1 for i in range(min(m, n)) if D[i, i] != 0)
        return V[:, r:]
    if ring.kind == "F":
        q = ring.modulus
        R, pivots, _ = rref_mod(A, q)
        free = [c for c in range(n) if c not in pivots]
        K = zeros(n, len(free))
        for k, f in enumerate(free):
            K[f, k] = 1
            for r, c in enumerate(pivots):
                K[c, k] = (-R[r, f]) % q
        return K
    nmod = ring.modulus
    aug = np.concatenate([A, nmod * identity(m)], axis=1)
    K = kernel(aug, GroundRing.integers())[:n, :] % nmod
    keep = [k for k in range(K.shape[1]) if any(K[:, k])]
    return K[:, keep]


def image_basis(G) -> np.ndarray:
    """A Z-basis (as columns) of the lattice spanned by the columns of G."""
    G = mat(G)
    D, _, V = smith_normal_form(G)
    r = sum(1 for i in range(min(D.shape)) if D[i, i] != 0)
    if r == G.shape[1]:
        return G
    return (G @ V)[:, :r]


def inverse(A, ring: GroundRing) -> np.ndarray:
    """Inverse of a square matrix over the ring; raises if it is singular."""
    A = mat(A)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    cols = []
    for i in range(n):
        e = zeros(n, 1)
        e[i, 0] = 1
        x = solve_linear(A, e, ring)
        if x is None:
            raise ZeroDivisionError("matrix is not invertible")
        cols.append(x)
    return reduce(hstack(cols, n), ring)
