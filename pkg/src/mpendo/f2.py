"""Small F2 linear algebra on bit tuples."""

from __future__ import annotations

from itertools import product as _product
from typing import Sequence

Bits = tuple


def zero(n: int) -> Bits:
    return (0,) * n


def add(x: Bits, y: Bits) -> Bits:
    return tuple(a ^ b for a, b in zip(x, y))


def dot(x: Bits, y: Bits) -> int:
    return sum(a & b for a, b in zip(x, y)) & 1


def pairing(chi: Bits, x: Bits) -> int:
    """chi(x) as a sign."""
    return -1 if dot(chi, x) else 1


def all_vectors(n: int):
    return [tuple(v) for v in _product((0, 1), repeat=n)]


def to_str(x: Bits) -> str:
    return "".join(str(b) for b in x)


def from_str(s: str) -> Bits:
    if any(c not in "01" for c in s):
        raise ValueError(f"bad bit string {s!r}")
    return tuple(int(c) for c in s)


def apply(columns: Sequence[Bits], x: Bits, target_dim: int) -> Bits:
    """Apply the linear map whose i-th column is columns[i]."""
    out = zero(target_dim)
    for xi, col in zip(x, columns):
        if xi:
            out = add(out, col)
    return out


def transpose_apply(columns: Sequence[Bits], chi: Bits) -> Bits:
    """Pull back a character along the map with given columns."""
    return tuple(dot(col, chi) for col in columns)


def _echelon(rows):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(vectors: Sequence[Bits]) -> int:
    if not vectors:
        return 0
    return len(_echelon(vectors)[0])


def kernel_basis(columns: Sequence[Bits], target_dim: int) -> list:
    """Basis of {x : sum x_i columns[i] = 0}."""
    n = len(columns)
    if n == 0:
        return []
    rows = [tuple(columns[j][i] for j in range(n)) for i in range(target_dim)]
    if not rows:
        return [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    red, pivots = _echelon(rows)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = 1
        basis.append(tuple(v))
    return basis


def solve(columns: Sequence[Bits], target: Bits):
    """One solution x of sum x_i columns[i] = target, or None."""
    n = len(columns)
    m = len(target)
    aug = [tuple(columns[j][i] for j in range(n)) + (target[i],) for i in range(m)]
    if not aug:
        return zero(n)
    red, pivots = _echelon(aug)
    if n in pivots:
        return None
    x = [0] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return tuple(x)


def span(basis: Sequence[Bits], n: int):
    out = []
    for coeffs in _product((0, 1), repeat=len(basis)):
        v = zero(n)
        for c, b in zip(coeffs, basis):
            if c:
                v = add(v, b)
        out.append(v)
    return out
