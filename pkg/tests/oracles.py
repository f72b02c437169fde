"""Independent brute-force oracles shared by the tests."""

from itertools import product


def matmul(A, b):
    return [sum(a * x for a, x in zip(row, b)) for row in A]


def exhaustive_solution(A, b, modulus=0, box=4):
    """Some x with A x = b, searching entries in [-box, box] (or all residues), else None."""
    n = len(A[0])
    values = range(modulus) if modulus else range(-box, box + 1)
    for x in product(values, repeat=n):
        y = matmul(A, x)
        if modulus:
            if all((u - v) % modulus == 0 for u, v in zip(y, b)):
                return list(x)
        elif y == list(b):
            return list(x)
    return None


def det(M):
    """Laplace expansion; fine for the tiny matrices used here."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(n))


def minors_gcd(M, k):
    """gcd of all k x k minors."""
    from math import gcd
    from itertools import combinations

    g = 0
    rows, cols = len(M), len(M[0]) if M else 0
    for r in combinations(range(rows), k):
        for c in combinations(range(cols), k):
            g = gcd(g, det([[M[i][j] for j in c] for i in r]))
    return g
