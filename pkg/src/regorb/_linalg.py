"""Dense exact linear algebra over small prime fields.

Matrices are sequences of row tuples with entries reduced mod p; dimensions
stay in the low hundreds, so plain Gaussian elimination is the right tool.
Everything returns fresh tuples and mutates nothing.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b, p):
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a
    )


def mat_sub(a, b, p):
    return tuple(
        tuple((x - y) % p for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_vec(a, v, p):
    return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)


def kron(a, b, p):
    nb = len(b)
    out = []
    for i in range(len(a) * nb):
        ra, rb = a[i // nb], b[i % nb]
        out.append(
            tuple((x * y) % p for x in ra for y in rb)
        )
    return tuple(out)


def rref(rows, p):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


def rank_of(a, p):
    return len(rref(a, p)[0])


def kernel_basis(a, p):
    """Basis of {v : a v = 0}, as tuples."""
    rows, pivots = rref(a, p)
    ncols = len(a[0]) if a else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(rows, pivots):
            v[pc] = (-row[fc]) % p
        basis.append(tuple(v))
    return basis


def coords_in_basis(basis, vecs, p):
    """Coordinates of each of ``vecs`` in the independent set ``basis``.

    Returns a list of coordinate tuples; raises if some vector is outside
    the span or the claimed basis is dependent.
    """
    k, m = len(basis), len(vecs)
    n = len(basis[0]) if basis else (len(vecs[0]) if vecs else 0)
    rows = [
        tuple(basis[j][i] for j in range(k)) + tuple(vecs[j][i] for j in range(m))
        for i in range(n)
    ]
    red, pivots = rref(rows, p)
    if len([c for c in pivots if c < k]) != k:
        raise ValueError("basis vectors are dependent")
    if any(c >= k for c in pivots):
        raise ValueError("vector outside the span of the basis")
    coords = []
    for j in range(m):
        col = [0] * k
        for row, pc in zip(red, pivots):
            col[pc] = row[k + j]
        coords.append(tuple(col))
    return coords


def restrict_action(a, basis, p):
    """Matrix of ``a`` on the invariant subspace spanned by ``basis``."""
    images = [mat_vec(a, b, p) for b in basis]
    cols = coords_in_basis(basis, images, p)
    k = len(basis)
    return tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))


def quotient_action(a, sub_vectors, p):
    """Matrix induced by ``a`` on F^n modulo the span of ``sub_vectors``."""
    n = len(a)
    red, pivots = rref(sub_vectors, p)
    free = [c for c in range(n) if c not in pivots]

    def canon(v):
        v = list(v)
        for row, pc in zip(red, pivots):
            f = v[pc] % p
            if f:
                v = [(x - f * y) % p for x, y in zip(v, row)]
        return [v[c] % p for c in free]

    cols = []
    for fc in free:
        e = [0] * n
        e[fc] = 1
        cols.append(canon(mat_vec(a, tuple(e), p)))
    k = len(free)
    return tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))


def det(a, p):
    """Determinant mod p by fraction-free elimination on a copy."""
    m = [list(r) for r in a]
    n = len(m)
    sign = 1
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        d = (d * m[c][c]) % p
        inv = pow(m[c][c], -1, p)
        for i in range(c + 1, n):
            f = (m[i][c] * inv) % p
            if f:
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[c])]
    return (sign * d) % p


def wedge_power(a, k, p):
    """Induced matrix on the k-th exterior power (basis: sorted k-subsets)."""
    n = len(a)
    subsets = list(combinations(range(n), k))
    index = {s: i for i, s in enumerate(subsets)}
    out = [[0] * len(subsets) for _ in subsets]
    for s in subsets:
        for t in subsets:
            out[index[t]][index[s]] = det([[a[r][c] for c in s] for r in t], p)
    return tuple(tuple(row) for row in out)


def sym_power(a, m, p):
    """Induced matrix on the m-th symmetric power (basis: sorted multisets)."""
    n = len(a)
    basis = list(combinations_with_replacement(range(n), m))
    index = {b: i for i, b in enumerate(basis)}
    out = [[0] * len(basis) for _ in basis]
    for b in basis:
        # expand the product of the image linear forms of the letters of b
        poly = {(): 1}
        for j in b:
            nxt = {}
            for mono, c in poly.items():
                for i in range(n):
                    if a[i][j] % p:
                        key = tuple(sorted(mono + (i,)))
                        nxt[key] = (nxt.get(key, 0) + c * a[i][j]) % p
            poly = nxt
        for mono, c in poly.items():
            out[index[mono]][index[b]] = c % p
    return tuple(tuple(row) for row in out)


def unipotent_jordan_type(a, p):
    """Jordan block sizes (descending) of a unipotent matrix over F_p."""
    n = len(a)
    nil = mat_sub(a, identity(n), p)
    ranks = [n]
    power = identity(n)
    while ranks[-1]:
        power = mat_mul(power, nil, p)
        ranks.append(rank_of(power, p))
    sizes = []
    # blocks of size >= j: ranks[j-1] - ranks[j]
    counts = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    for j in range(len(counts), 0, -1):
        exactly = counts[j - 1] - (counts[j] if j < len(counts) else 0)
        sizes.extend([j] * exactly)
    return tuple(sorted(sizes, reverse=True))


def fixed_space_dim(a, p):
    """dim ker(a - 1) = number of Jordan blocks for unipotent a."""
    n = len(a)
    return n - rank_of(mat_sub(a, identity(n), p), p)


def jordan_block_unipotent(n, p):
    """Upper triangular unipotent single block (ones on the superdiagonal)."""
    return tuple(
        tuple(1 if j == i or j == i + 1 else 0 for j in range(n)) for i in range(n)
    )
