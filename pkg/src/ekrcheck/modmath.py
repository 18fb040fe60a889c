"""Modular linear algebra shared by the character-table and rank modules.

Everything works on int64 numpy matrices with a prime modulus small enough
that a*b never overflows (p < 2^31), which covers both the Dixon primes
(p slightly above 2*sqrt|G|) and the 29-bit rank certification primes.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_one_mod(e: int, lower: int) -> int:
    """Smallest prime p with p ≡ 1 (mod e) and p > lower."""
    m = max(1, (lower // e) + 1)
    while True:
        p = m * e + 1
        if p > lower and is_prime(p):
            return p
        m += 1


def element_of_order(p: int, e: int, prime_divisors: list[int]) -> int:
    """Element of exact multiplicative order e in F_p (requires e | p-1)."""
    assert (p - 1) % e == 0
    q = (p - 1) // e
    for x in range(2, p):
        z = pow(x, q, p)
        if z != 1 and all(pow(z, e // r, p) != 1 for r in prime_divisors):
            return z
    raise AssertionError("no element of the requested order")


def rref_mod(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (R, pivot_columns)."""
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        others = np.nonzero(R[:, c])[0]
        others = others[others != r]
        if others.size:
            R[others] = (R[others] - np.outer(R[others, c], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod(A: np.ndarray, p: int) -> int:
    return len(rref_mod(A, p)[1])


def nullspace_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel mod p, one vector per row."""
    R, pivots = rref_mod(A, p)
    cols = R.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for r, pc in enumerate(pivots):
            basis[bi, pc] = (-int(R[r, fc])) % p
    return basis


def charpoly_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Characteristic polynomial coefficients mod p (Faddeev-LeVerrier),
    returned lowest degree first with leading coefficient (-1)^k folded out:
    result[j] is the coefficient of x^j of det(xI - A)."""
    A = np.array(A, dtype=np.int64) % p
    k = A.shape[0]
    coeffs = np.zeros(k + 1, dtype=np.int64)
    coeffs[k] = 1
    M = np.zeros_like(A)
    c = 1
    for j in range(1, k + 1):
        M = (A @ M + c * np.eye(k, dtype=np.int64)) % p
        c = (-(np.trace(A @ M) % p) * pow(j, -1, p)) % p
        coeffs[k - j] = c
    return coeffs % p


def poly_roots_mod(coeffs: np.ndarray, p: int) -> list[int]:
    """All roots in F_p of the polynomial with the given coefficients
    (lowest degree first), found by direct evaluation."""
    xs = np.arange(p, dtype=np.int64)
    vals = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        vals = (vals * xs + int(c)) % p
    return [int(x) for x in np.nonzero(vals == 0)[0]]


# ---- exact polynomials over Q (lowest degree first, Fraction coeffs) ----


def poly_trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def poly_eval(p: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_derivative(p: list[Fraction]) -> list[Fraction]:
    if len(p) <= 1:
        return [Fraction(0)]
    return [c * i for i, c in enumerate(p)][1:]


def poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(c != 0 for c in a):
        shift = len(a) - 1 - db
        q = a[-1] / lb
        for i in range(len(b)):
            a[shift + i] -= q * b[i]
        a = poly_trim(a[:-1]) if a[-1] == 0 else poly_trim(a)
    return poly_trim(a)


def poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = poly_trim(list(a)), poly_trim(list(b))
    while any(c != 0 for c in b):
        a, b = b, poly_rem(a, b)
    if a[-1] != 0:
        a = [c / a[-1] for c in a]
    return a


def poly_div_exact(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    out = [Fraction(0)] * (len(a) - db)
    while len(a) - 1 >= db and any(c != 0 for c in a):
        shift = len(a) - 1 - db
        q = a[-1] / lb
        out[shift] = q
        for i in range(len(b)):
            a[shift + i] -= q * b[i]
        a = a[:-1]
        while len(a) > 1 and a[-1] == 0:
            a = a[:-1]
    return poly_trim(out)


def count_roots_strictly_below(p: list[Fraction], a: Fraction) -> int:
    """Number of distinct real roots of p in (-inf, a), by Sturm's theorem."""
    p = poly_trim([Fraction(c) for c in p])
    if len(p) == 1:
        return 0
    sf = poly_div_exact(p, poly_gcd(p, poly_derivative(p)))
    chain = [sf, poly_trim(poly_derivative(sf))]
    while len(chain[-1]) > 1 or chain[-1][0] != 0:
        r = poly_rem(chain[-2], chain[-1])
        if all(c == 0 for c in r):
            break
        chain.append([-c for c in r])

    def variations(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for x, y in zip(signs, signs[1:]) if x * y < 0)

    at_minus_inf = [
        (1 if q[-1] > 0 else -1) * (1 if (len(q) - 1) % 2 == 0 else -1)
        for q in chain
        if any(c != 0 for c in q)
    ]
    at_a = []
    for q in chain:
        v = poly_eval(q, a)
        at_a.append(0 if v == 0 else (1 if v > 0 else -1))
    below_or_at = variations(at_minus_inf) - variations(at_a)
    return below_or_at - (1 if poly_eval(sf, a) == 0 else 0)
