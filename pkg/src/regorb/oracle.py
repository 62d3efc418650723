"""Exhaustive ground truth at desk scale.

Everything here is explicit: finite fields with a deterministic modulus,
matrix representations of SL_n(q) on small modules (symmetric and exterior
powers, Frobenius twists, tensor products, the trace-zero conjugation
module, subfield restrictions), breadth-first group enumeration, exact
orbit/stabilizer censuses, regular-orbit and base-size searches, and
brute-force counting oracles that the bounding modules are tested against.

Scale is capped on purpose: fields up to 2^20 elements, modules up to
dimension 64, enumerated groups up to 10^7 elements, vector spaces up to
2^24 points.  Within those caps every answer is exact; randomized mode
only ever produces existence evidence, never a non-existence claim.

Matrices are tuples of row tuples whose entries are field elements encoded
as integers (see ``GF``).  Vectors are rows and groups act on the right,
so ``rep(gh) == mat_mul(f, rep(g), rep(h))``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations, product

MAX_FIELD_SIZE = 1 << 20
MAX_MODULE_DIM = 64
MAX_GROUP_ORDER = 10**8
MAX_ENUM_ORDER = 10**7
MAX_SPACE_SIZE = 1 << 24

_TABLE_LIMIT = 256


class OracleCapError(RuntimeError):
    """A requested computation exceeds the exhaustive-search caps."""


# ---------------------------------------------------------------------------
# finite fields


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _poly_divides(div, poly, p):
    """Exact division test for dense coefficient lists over F_p."""
    rem = list(poly)
    dd = len(div) - 1
    inv = pow(div[-1], -1, p)
    while True:
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dd or not any(rem):
            break
        factor = (rem[-1] * inv) % p
        shift = len(rem) - 1 - dd
        for i, c in enumerate(div):
            rem[shift + i] = (rem[shift + i] - factor * c) % p
    return not any(rem)


def _irreducible(coeffs, p):
    """Trial division by every monic polynomial of at most half the degree."""
    e = len(coeffs) - 1
    if e < 1:
        return False
    for deg in range(1, e // 2 + 1):
        for idx in range(p**deg):
            div = []
            v = idx
            for _ in range(deg):
                div.append(v % p)
                v //= p
            div.append(1)
            if _poly_divides(div, list(coeffs), p):
                return False
    return True


def _least_irreducible(p, e):
    # lex order on (a_{e-1}, ..., a_0), i.e. on the written-out polynomial
    for idx in range(p**e):
        low = []
        v = idx
        for _ in range(e):
            low.append(v % p)
            v //= p
        coeffs = tuple(low) + (1,)
        if _irreducible(coeffs, p):
            return coeffs
    raise RuntimeError("no irreducible polynomial found")


class GF:
    """F_{p^e} with elements encoded as integers in [0, p^e).

    The integer's base-p digits are the coefficients of the residue
    polynomial, so 0 and 1 are the field's zero and one for every (p, e).
    Construct through ``build_field``; instances are cached and immutable.
    """

    __slots__ = ("p", "e", "q", "modulus", "_mul_t", "_inv_t", "_red")

    def __init__(self, p, e, modulus):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        # digit vectors of x^(e+i) mod modulus, for the slow reduction path
        tail = [(-c) % p for c in modulus[:e]]
        red = [tuple(tail)]
        cur = tail[:]
        for _ in range(e - 2):
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(cur[i] + top * tail[i]) % p for i in range(e)]
            red.append(tuple(cur))
        self._red = tuple(red)
        if self.q <= _TABLE_LIMIT:
            self._mul_t = [
                [self._mul_slow(a, b) for b in range(self.q)] for a in range(self.q)
            ]
            inv = [0] * self.q
            for a in range(1, self.q):
                inv[a] = self.pow(a, self.q - 2)
            self._inv_t = inv
        else:
            self._mul_t = None
            self._inv_t = None
        self._spot_check()

    # -- element codec

    def digits(self, a):
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def undigits(self, ds):
        v = 0
        for c in reversed(tuple(ds)):
            v = v * self.p + (c % self.p)
        return v

    def elements(self):
        return range(self.q)

    # -- arithmetic

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        da, db = self.digits(a), self.digits(b)
        return self.undigits((x + y) % self.p for x, y in zip(da, db))

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        return self.undigits((-x) % self.p for x in self.digits(a))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _mul_slow(self, a, b):
        p, e = self.p, self.e
        da, db = self.digits(a), self.digits(b)
        conv = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    conv[i + j] += x * y
        low = [c % p for c in conv[:e]]
        for i in range(len(conv) - 1, e - 1, -1):
            c = conv[i] % p
            if c:
                row = self._red[i - e]
                for j in range(e):
                    low[j] = (low[j] + c * row[j]) % p
        return self.undigits(low)

    def mul(self, a, b):
        if self._mul_t is not None:
            return self._mul_t[a][b]
        if self.e == 1:
            return (a * b) % self.p
        return self._mul_slow(a, b)

    def pow(self, a, k):
        if k < 0:
            return self.pow(self.inv(a), -k)
        out = 1
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("field inverse of zero")
        if self._inv_t is not None:
            return self._inv_t[a]
        return self.pow(a, self.q - 2)

    def frob(self, a, times=1):
        return self.pow(a, self.p ** (times % self.e))

    # -- construction-time sanity

    def _spot_check(self):
        if not _irreducible(self.modulus, self.p):
            raise ValueError("modulus is reducible")
        # Frobenius must fix exactly the prime field
        if self.q <= 4096:
            fixed = sum(1 for a in range(self.q) if self.frob(a) == a)
            if fixed != self.p:
                raise RuntimeError("Frobenius fixes a wrong subfield")
        probe = [0, 1, min(2, self.q - 1), self.q - 1, self.q // 2]
        for a in probe:
            for b in probe:
                if self.frob(self.add(a, b)) != self.add(self.frob(a), self.frob(b)):
                    raise RuntimeError("Frobenius is not additive")
                if self.frob(self.mul(a, b)) != self.mul(self.frob(a), self.frob(b)):
                    raise RuntimeError("Frobenius is not multiplicative")
            if self.mul(1, a) != a:
                raise RuntimeError("unit law fails")

    def __repr__(self):
        return "GF(%d^%d)" % (self.p, self.e)


_FIELD_CACHE = {}


def build_field(p, e):
    """The field with p^e elements, lex-least monic irreducible modulus."""
    if not _is_prime(p):
        raise ValueError("characteristic %r is not prime" % (p,))
    if e < 1:
        raise ValueError("degree must be positive")
    if p**e > MAX_FIELD_SIZE:
        raise OracleCapError("field size %d exceeds cap" % (p**e,))
    key = (p, e)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = GF(p, e, _least_irreducible(p, e))
    return _FIELD_CACHE[key]


def _factorize(m):
    out = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def primitive_element(field):
    """Least generator of the multiplicative group, in integer order."""
    if field.q == 2:
        return 1
    primes = list(_factorize(field.q - 1))
    for a in range(2, field.q):
        if all(field.pow(a, (field.q - 1) // r) != 1 for r in primes):
            return a
    raise RuntimeError("no primitive element found")


_EMBED_CACHE = {}


def subfield_embedding(small, big):
    """Image map (as a list) for the unique copy of ``small`` inside ``big``."""
    if small.p != big.p or big.e % small.e:
        raise ValueError("no subfield embedding")
    key = (small.p, small.e, big.e)
    if key in _EMBED_CACHE:
        return _EMBED_CACHE[key]
    root = None
    for z in range(big.q):
        acc = 0
        for c in reversed(small.modulus):
            acc = big.add(big.mul(acc, z), c)
        if acc == 0:
            root = z
            break
    if root is None:
        raise RuntimeError("modulus has no root in the bigger field")
    table = []
    for a in range(small.q):
        acc = 0
        for c in reversed(small.digits(a)):
            acc = big.add(big.mul(acc, root), c)
        table.append(acc)
    _EMBED_CACHE[key] = table
    return table


# ---------------------------------------------------------------------------
# matrices over a GF


def identity_matrix(d):
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def mat_mul(f, a, b):
    bt = tuple(zip(*b))
    if f.e == 1:
        p = f.p
        return tuple(
            tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a
        )
    mul = f._mul_t
    if mul is not None:
        add = f.add
        rows = []
        for row in a:
            out = []
            for col in bt:
                acc = 0
                for x, y in zip(row, col):
                    if x and y:
                        acc = add(acc, mul[x][y])
                out.append(acc)
            rows.append(tuple(out))
        return tuple(rows)
    rows = []
    for row in a:
        out = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = f.add(acc, f.mul(x, y))
            out.append(acc)
        rows.append(tuple(out))
    return tuple(rows)


def vec_mat(f, v, a):
    if f.e == 1:
        p = f.p
        return tuple(sum(x * y for x, y in zip(v, col)) % p for col in zip(*a))
    out = []
    for col in zip(*a):
        acc = 0
        for x, y in zip(v, col):
            if x and y:
                acc = f.add(acc, f.mul(x, y))
        out.append(acc)
    return tuple(out)


def mat_add(f, a, b):
    return tuple(tuple(f.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(f, a, b):
    return tuple(tuple(f.sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(f, c, a):
    return tuple(tuple(f.mul(c, x) for x in row) for row in a)


def mat_frob(f, a, times=1):
    return tuple(tuple(f.frob(x, times) for x in row) for row in a)


def mat_pow(f, a, k):
    out = identity_matrix(len(a))
    base = a
    while k:
        if k & 1:
            out = mat_mul(f, out, base)
        base = mat_mul(f, base, base)
        k >>= 1
    return out


def _elim(f, a):
    """Row reduce a copy; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in a]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = f.inv(rows[r][c])
        rows[r] = [f.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                fac = rows[i][c]
                rows[i] = [f.sub(x, f.mul(fac, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


def mat_rank(f, a):
    return len(_elim(f, a)[0])


def row_kernel_basis(f, a):
    """Basis of {v : v a = 0}."""
    rows, pivots = _elim(f, tuple(zip(*a)))
    n = len(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for row, pc in zip(rows, pivots):
            v[pc] = f.neg(row[fc])
        basis.append(tuple(v))
    return basis


def mat_det(f, a):
    m = [list(r) for r in a]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = f.neg(det)
        det = f.mul(det, m[c][c])
        inv = f.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                fac = f.mul(m[i][c], inv)
                m[i] = [f.sub(x, f.mul(fac, y)) for x, y in zip(m[i], m[c])]
    return det


def mat_inv(f, a):
    n = len(a)
    m = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(a)]
    rows, pivots = _elim(f, m)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in rows)


def mat_trace(f, a):
    t = 0
    for i in range(len(a)):
        t = f.add(t, a[i][i])
    return t


def kron(f, a, b):
    rows = []
    for ra in a:
        for rb in b:
            rows.append(tuple(f.mul(x, y) for x in ra for y in rb))
    return tuple(rows)


def scalar_matrix(field, d, value):
    return tuple(tuple(value if i == j else 0 for j in range(d)) for i in range(d))


# ---------------------------------------------------------------------------
# characteristic polynomials and eigenvalue exponents
#
# polynomials are ascending coefficient tuples over the field


def _ptrim(cs):
    cs = list(cs)
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_add(f, a, b):
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return _ptrim(f.add(x, y) for x, y in zip(a, b))


def poly_mul(f, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = f.add(out[i + j], f.mul(x, y))
    return _ptrim(out)


def poly_divmod(f, a, b):
    b = _ptrim(b)
    if b == (0,):
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(_ptrim(a))
    inv = f.inv(b[-1])
    db = len(b) - 1
    quo = [0] * max(1, len(rem) - db)
    while len(rem) - 1 >= db and any(rem):
        while rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < db:
            break
        shift = len(rem) - 1 - db
        fac = f.mul(rem[-1], inv)
        quo[shift] = fac
        for i, c in enumerate(b):
            rem[shift + i] = f.sub(rem[shift + i], f.mul(fac, c))
    return _ptrim(quo), _ptrim(rem)


def poly_eval(f, cs, x):
    acc = 0
    for c in reversed(cs):
        acc = f.add(f.mul(acc, x), c)
    return acc


def _char_poly_direct(f, a):
    # det(tI - a) via permutation expansion; fine up to 4x4
    n = len(a)
    total = (0,)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        sign = 1 if inv % 2 == 0 else f.neg(1)
        prod = (sign,)
        for i in range(n):
            entry = f.neg(a[i][perm[i]])
            if perm[i] == i:
                prod = poly_mul(f, prod, (entry, 1))
            else:
                if entry == 0:
                    prod = (0,)
                    break
                prod = poly_mul(f, prod, (entry,))
        total = poly_add(f, total, prod)
    return total


def _char_poly_hessenberg(f, a):
    n = len(a)
    h = [list(r) for r in a]
    for c in range(n - 2):
        piv = next((i for i in range(c + 1, n) if h[i][c]), None)
        if piv is None:
            continue
        if piv != c + 1:
            h[c + 1], h[piv] = h[piv], h[c + 1]
            for row in h:
                row[c + 1], row[piv] = row[piv], row[c + 1]
        inv = f.inv(h[c + 1][c])
        for i in range(c + 2, n):
            if h[i][c]:
                fac = f.mul(h[i][c], inv)
                h[i] = [f.sub(x, f.mul(fac, y)) for x, y in zip(h[i], h[c + 1])]
                for ri in range(n):
                    h[ri][c + 1] = f.add(h[ri][c + 1], f.mul(fac, h[ri][i]))
    polys = [(1,)]
    for k in range(1, n + 1):
        term = poly_mul(f, polys[k - 1], (f.neg(h[k - 1][k - 1]), 1))
        run = 1
        for m in range(2, k + 1):
            run = f.mul(run, h[k - m + 1][k - m])
            if not run:
                break
            coeff = f.mul(run, h[k - m][k - 1])
            if coeff:
                term = poly_add(f, term, poly_mul(f, polys[k - m], (f.neg(coeff),)))
        polys.append(term)
    return polys[n]


def char_poly(f, a):
    """Monic characteristic polynomial, ascending coefficients."""
    if len(a) <= 4:
        return _char_poly_direct(f, a)
    return _char_poly_hessenberg(f, a)


_CYCLO_CACHE = {}


def _mult_order(q, r):
    s, acc = 1, q % r
    while acc != 1:
        acc = (acc * q) % r
        s += 1
    return s


def cyclotomic_factors(field, r):
    """Irreducible factors of t^r - 1 over the field, as (exponent orbit, coeffs).

    The orbit lists the exponents j whose root zeta^j the factor kills, for a
    fixed element zeta of multiplicative order r in the splitting field.
    """
    if r < 1 or math.gcd(r, field.p) != 1:
        raise ValueError("order must be positive and coprime to the characteristic")
    key = (field.p, field.e, r)
    if key in _CYCLO_CACHE:
        return _CYCLO_CACHE[key]
    q = field.q
    orbits = []
    seen = set()
    for j in range(r):
        if j in seen:
            continue
        orb = [j]
        seen.add(j)
        cur = (j * q) % r
        while cur != j:
            orb.append(cur)
            seen.add(cur)
            cur = (cur * q) % r
        orbits.append(tuple(sorted(orb)))
    s = 1 if r == 1 else _mult_order(q, r)
    big = build_field(field.p, field.e * s)
    emb = subfield_embedding(field, big)
    back = {img: a for a, img in enumerate(emb)}
    zeta = big.pow(primitive_element(big), (big.q - 1) // r)
    factors = []
    for orb in orbits:
        poly = (1,)
        for j in orb:
            poly = poly_mul(big, poly, (big.neg(big.pow(zeta, j)), 1))
        coeffs = tuple(back[c] for c in poly)
        factors.append((orb, coeffs))
    check = (1,)
    for _, coeffs in factors:
        check = poly_mul(field, check, coeffs)
    target = [0] * (r + 1)
    target[0], target[r] = field.neg(1), 1
    if check != _ptrim(target):
        raise RuntimeError("cyclotomic factorization failed to multiply back")
    factors.sort(key=lambda fc: fc[0][0])
    _CYCLO_CACHE[key] = tuple(factors)
    return _CYCLO_CACHE[key]


def eigenvalue_exponents(field, matrix, r):
    """Multiplicities {j: m} of the eigenvalues zeta^j of a matrix with M^r = 1.

    Raises if the characteristic polynomial is not a product of r-th roots
    of unity, i.e. the matrix is not semisimple of order dividing r.
    """
    chi = char_poly(field, matrix)
    out = {}
    rem = chi
    for orb, coeffs in cyclotomic_factors(field, r):
        while len(rem) > 1:
            quo, res = poly_divmod(field, rem, coeffs)
            if res != (0,):
                break
            rem = quo
            for j in orb:
                out[j] = out.get(j, 0) + 1
    if rem != (1,):
        raise ValueError("matrix order does not divide %d" % (r,))
    return out


def largest_eigenspace_dim(field, matrix, r):
    return max(eigenvalue_exponents(field, matrix, r).values())


def fixed_space_dim(field, matrix):
    d = len(matrix)
    return d - mat_rank(field, mat_sub(field, matrix, identity_matrix(d)))


def _factor_multiset(f, poly):
    """(degree, multiplicity) pairs for a monic polynomial of degree <= 5.

    Trial division by all monic polynomials of degree at most 2 strips every
    small factor; what remains (degree 3, 4 or 5) is then irreducible.
    """
    rem = _ptrim(poly)
    out = []
    for deg in (1, 2):
        for idx in range(f.q**deg):
            cand = []
            v = idx
            for _ in range(deg):
                cand.append(v % f.q)
                v //= f.q
            cand = tuple(cand) + (1,)
            if deg == 2 and any(poly_eval(f, cand, x) == 0 for x in range(f.q)):
                continue  # reducible quadratic; its linear parts are caught at deg 1
            mult = 0
            while len(rem) > deg:
                quo, res = poly_divmod(f, rem, cand)
                if res != (0,):
                    break
                rem = quo
                mult += 1
            if mult:
                out.append((deg, mult))
    if len(rem) > 1:
        if len(rem) - 1 > 5:
            raise ValueError("factorization implemented for degree <= 5 only")
        out.append((len(rem) - 1, 1))
    return out


def matrix_order(f, m):
    """Multiplicative order, via the factor degrees of the char polynomial."""
    d = len(m)
    ident = identity_matrix(d)
    chi = char_poly(f, m)
    exp = 1
    for deg, _ in _factor_multiset(f, chi):
        part = f.q**deg - 1
        exp = exp * part // math.gcd(exp, part)
    pk = 1
    while pk < d:
        pk *= f.p
    exp *= pk
    order = exp
    for r in _factorize(exp):
        while order % r == 0 and mat_pow(f, m, order // r) == ident:
            order //= r
    if mat_pow(f, m, order) != ident:
        raise RuntimeError("order computation failed")
    return order


# ---------------------------------------------------------------------------
# module descriptors and representations


def _parse_descriptor(descriptor, n, p):
    text = descriptor.replace(" ", "")
    if text.startswith("subfield(") and text.endswith(")"):
        c = int(text[len("subfield(") : -1])
        if c < 2:
            raise ValueError("subfield restriction needs c >= 2")
        return ("subfield", c)
    atoms = []
    for piece in text.split("*"):
        twist = 0
        if "^(" in piece:
            piece, _, rest = piece.partition("^(")
            if not rest.endswith(")"):
                raise ValueError("malformed twist in %r" % (descriptor,))
            power = int(rest[:-1])
            a = 0
            while power > 1 and power % p == 0:
                power //= p
                a += 1
            if power != 1 or a == 0:
                raise ValueError("twist must be a positive power of %d" % (p,))
            twist = a
        if piece == "natural":
            atoms.append(("natural", 0, twist))
        elif piece == "dual":
            atoms.append(("dual", 0, twist))
        elif piece == "adjoint":
            atoms.append(("adjoint", 0, twist))
        elif piece.startswith("sym"):
            k = int(piece[3:])
            if k < 1:
                raise ValueError("symmetric power must be positive")
            atoms.append(("sym", k, twist))
        elif piece.startswith("wedge"):
            k = int(piece[5:])
            if not 1 <= k <= n:
                raise ValueError("exterior power out of range")
            atoms.append(("wedge", k, twist))
        else:
            raise ValueError("unsupported descriptor atom %r" % (piece,))
    if not atoms:
        raise ValueError("empty descriptor")
    return ("tensor", atoms)


def _atom_dim(kind, k, n, p):
    if kind in ("natural", "dual"):
        return n
    if kind == "sym":
        return math.comb(n + k - 1, k)
    if kind == "wedge":
        return math.comb(n, k)
    if kind == "adjoint":
        return n * n - 1 - (1 if n % p == 0 else 0)
    raise ValueError(kind)


def descriptor_dim(n, field, descriptor):
    parsed = _parse_descriptor(descriptor, n, field.p)
    if parsed[0] == "subfield":
        return n ** parsed[1]
    d = 1
    for kind, k, _ in parsed[1]:
        d *= _atom_dim(kind, k, n, field.p)
    return d


def _sym_matrix(f, g, k):
    n = len(g)
    basis = list(combinations_with_replacement(range(n), k))
    index = {b: i for i, b in enumerate(basis)}
    rows = []
    for b in basis:
        poly = {(): 1}
        for letter in b:
            nxt = {}
            row = g[letter]
            for mono, c in poly.items():
                for j in range(n):
                    if row[j]:
                        key = tuple(sorted(mono + (j,)))
                        nxt[key] = f.add(nxt.get(key, 0), f.mul(c, row[j]))
            poly = nxt
        out = [0] * len(basis)
        for mono, c in poly.items():
            out[index[mono]] = c
        rows.append(tuple(out))
    return tuple(rows)


def _wedge_matrix(f, g, k):
    n = len(g)
    subsets = list(combinations(range(n), k))
    rows = []
    for s in subsets:
        out = []
        for t in subsets:
            out.append(mat_det(f, tuple(tuple(g[r][c] for c in t) for r in s)))
        rows.append(tuple(out))
    return tuple(rows)


def _adjoint_basis(n):
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def _adjoint_coords(f, mat, n, quotient):
    pairs = _adjoint_basis(n)
    coords = [mat[i][j] for i, j in pairs]
    acc = 0
    hcoords = []
    for t in range(n - 1):
        acc = f.add(acc, mat[t][t])
        hcoords.append(acc)
    if quotient:
        # kill the first diagonal slot using the identity's coordinates 1,2,...
        lead = hcoords[0]
        if lead:
            for t in range(n - 1):
                hcoords[t] = f.sub(hcoords[t], f.mul(lead, (t + 1) % f.p))
        hcoords = hcoords[1:]
    return tuple(coords + hcoords)


def _adjoint_matrix(f, g, n):
    quotient = n % f.p == 0
    ginv = mat_inv(f, g)
    basis_mats = []
    for i, j in _adjoint_basis(n):
        m = [[0] * n for _ in range(n)]
        m[i][j] = 1
        basis_mats.append(tuple(tuple(r) for r in m))
    for t in range(1 if quotient else 0, n - 1):
        m = [[0] * n for _ in range(n)]
        m[t][t] = 1
        m[t + 1][t + 1] = f.neg(1)
        basis_mats.append(tuple(tuple(r) for r in m))
    rows = []
    for bm in basis_mats:
        image = mat_mul(f, mat_mul(f, ginv, bm), g)
        rows.append(_adjoint_coords(f, image, n, quotient))
    return tuple(rows)


def adjoint_coords(field, n, matrix):
    """Coordinates of a trace-zero matrix in the conjugation module basis."""
    if mat_trace(field, matrix):
        raise ValueError("matrix has nonzero trace")
    return _adjoint_coords(field, matrix, n, n % field.p == 0)


def adjoint_lift(field, n, vector):
    """A trace-zero matrix with the given coordinates (a section, if quotiented)."""
    quotient = n % field.p == 0
    pairs = _adjoint_basis(n)
    m = [[0] * n for _ in range(n)]
    for (i, j), c in zip(pairs, vector):
        m[i][j] = c
    hco = list(vector[len(pairs) :])
    if quotient:
        hco = [0] + hco
    prev = 0
    for t in range(n - 1):
        m[t][t] = field.sub(hco[t], prev)
        prev = hco[t]
    m[n - 1][n - 1] = field.neg(prev)
    return tuple(tuple(r) for r in m)


def functor_image(n, field, descriptor, matrix):
    """Image of an invertible n x n matrix under the module construction."""
    parsed = _parse_descriptor(descriptor, n, field.p)
    if parsed[0] == "subfield":
        raise ValueError("subfield images depend on the stored basis; build the rep")
    pieces = []
    for kind, k, twist in parsed[1]:
        g = mat_frob(field, matrix, twist) if twist else matrix
        if kind == "natural":
            pieces.append(g)
        elif kind == "dual":
            pieces.append(tuple(zip(*mat_inv(field, g))))
        elif kind == "sym":
            pieces.append(_sym_matrix(field, g, k))
        elif kind == "wedge":
            pieces.append(_wedge_matrix(field, g, k))
        else:
            pieces.append(_adjoint_matrix(field, g, n))
    out = pieces[0]
    for piece in pieces[1:]:
        out = kron(field, out, piece)
    return out


def sl_order(n, q):
    out = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        out *= q**i - 1
    return out


def gl_order(n, q):
    if n == 0:
        return 1
    return sl_order(n, q) * (q - 1)


def pgl_order(n, q):
    return sl_order(n, q)


def transvection_generators(n, field):
    """Root elements at the adjacent positions, one per basis coefficient."""
    gens = []
    for i in range(n - 1):
        for m in range(field.e):
            coeff = field.p**m
            for r, c in ((i, i + 1), (i + 1, i)):
                g = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
                g[r][c] = coeff
                gens.append(tuple(tuple(row) for row in g))
    return tuple(gens)


@dataclass(frozen=True)
class FiniteModuleRep:
    """An explicit matrix module: generators are images of SL_n generators."""

    field: GF
    dim: int
    generators: tuple
    descriptor: str
    kernel_order: int
    n: int
    group_field: GF
    group_order: int | None

    def apply(self, vector, matrix):
        return vec_mat(self.field, vector, matrix)


def _sl2_matrix(kind, t):
    if kind == "x":
        return ((1, t), (0, 1))
    return ((1, 0), (t, 1))


def _check_sl2_presentation(field, image):
    """Steinberg relations for the rank-one group, on functor images."""
    q = field.q
    if q <= 16:
        pairs = [(t, u) for t in range(q) for u in range(q)]
    else:
        rng = random.Random(7)
        pairs = [(rng.randrange(q), rng.randrange(q)) for _ in range(200)]
    w1 = mat_mul(
        field,
        mat_mul(
            field,
            image(_sl2_matrix("x", 1)),
            image(_sl2_matrix("y", field.neg(1))),
        ),
        image(_sl2_matrix("x", 1)),
    )
    w1_inv = mat_inv(field, w1)
    for t, u in pairs:
        xt, xu = image(_sl2_matrix("x", t)), image(_sl2_matrix("x", u))
        if mat_mul(field, xt, xu) != image(_sl2_matrix("x", field.add(t, u))):
            raise RuntimeError("additivity relation fails in the root subgroup")
        yt, yu = image(_sl2_matrix("y", t)), image(_sl2_matrix("y", u))
        if mat_mul(field, yt, yu) != image(_sl2_matrix("y", field.add(t, u))):
            raise RuntimeError("additivity relation fails in the opposite subgroup")
        if t:
            conj = mat_mul(field, mat_mul(field, w1, xt), w1_inv)
            if conj != image(_sl2_matrix("y", field.neg(t))):
                raise RuntimeError("Weyl conjugation relation fails")
            h = image(((t, 0), (0, field.inv(t))))
            conj = mat_mul(field, mat_mul(field, h, xu), mat_inv(field, h))
            if conj != image(_sl2_matrix("x", field.mul(field.mul(t, t), u))):
                raise RuntimeError("torus conjugation relation fails")


def _kernel_order(field, n, image):
    count = 0
    for lam in range(1, field.q):
        if field.pow(lam, n) == 1:
            img = image(scalar_matrix(field, n, lam))
            if img == identity_matrix(len(img)):
                count += 1
    return count


def _mixed_tuples(n, c):
    out = [()]
    for _ in range(c):
        out = [t + (i,) for t in out for i in range(n)]
    return out


def _build_subfield_rep(n, field, c):
    """Restrict the c-fold twisted tensor product to the index-c subfield.

    The module of SL_n over the big field is W (x) W^(q) (x) ... with one
    Frobenius twist per step; the cyclic index shift composed with the q-th
    power map commutes with the action, and its fixed vectors span the
    module over the subfield.  Conjugating into a spanning set of fixed
    vectors makes every generator's matrix land in the subfield.
    """
    if field.e % c:
        raise ValueError("field degree is not divisible by %d" % (c,))
    sub = build_field(field.p, field.e // c)
    q = sub.q
    dim = n**c
    if dim > MAX_MODULE_DIM:
        raise OracleCapError("dimension %d exceeds cap" % (dim,))
    order = sl_order(n, field.q)
    if order > MAX_GROUP_ORDER:
        raise OracleCapError("group order %d exceeds cap" % (order,))

    def shift(idx):
        return (idx[-1],) + idx[:-1]

    indices = _mixed_tuples(n, c)
    pos = {idx: i for i, idx in enumerate(indices)}
    seen = set()
    orbit_reps = []
    for idx in indices:
        if idx in seen:
            continue
        orb = [idx]
        seen.add(idx)
        cur = shift(idx)
        while cur != idx:
            orb.append(cur)
            seen.add(cur)
            cur = shift(cur)
        orbit_reps.append(min(orb))
    gamma = primitive_element(field)
    emb = subfield_embedding(sub, field)
    back = {img: a for a, img in enumerate(emb)}
    nus = [field.pow(gamma, j) for j in range(c)]

    candidates = []
    for rep_idx in sorted(orbit_reps):
        for nu in nus:
            row = [0] * dim
            cur, coef = rep_idx, nu
            for _ in range(c):
                row[pos[cur]] = field.add(row[pos[cur]], coef)
                cur = shift(cur)
                coef = field.pow(coef, q)
            candidates.append(tuple(row))
    # greedy independent subset, in order; short index orbits make some
    # candidates dependent, so selection rather than counting is what works
    t_rows = []
    for row in candidates:
        trial = t_rows + [row]
        if mat_rank(field, tuple(trial)) == len(trial):
            t_rows.append(row)
        if len(t_rows) == dim:
            break
    if len(t_rows) != dim:
        raise RuntimeError("fixed vectors failed to span the module")
    t_mat = tuple(t_rows)
    t_inv = mat_inv(field, t_mat)

    def image(g):
        factors = [g]
        for _ in range(1, c):
            factors.append(mat_frob(field, factors[-1], field.e // c))
        big = factors[0]
        for fac in factors[1:]:
            big = kron(field, big, fac)
        conj = mat_mul(field, mat_mul(field, t_mat, big), t_inv)
        out = []
        for row in conj:
            small_row = []
            for x in row:
                if x not in back:
                    raise RuntimeError("subfield restriction left the subfield")
                small_row.append(back[x])
            out.append(tuple(small_row))
        return tuple(out)

    gens = tuple(image(g) for g in transvection_generators(n, field))
    if n == 2:
        _check_sl2_presentation(field, image)
    kernel = _kernel_order(field, n, image)
    return FiniteModuleRep(
        field=sub,
        dim=dim,
        generators=gens,
        descriptor="subfield(%d)" % (c,),
        kernel_order=kernel,
        n=n,
        group_field=field,
        group_order=order // kernel,
    )


def build_representation(n, field, descriptor):
    """Explicit module for SL_n over the given field.

    Descriptors: ``natural``, ``dual``, ``symK``, ``wedgeK``, ``adjoint``,
    tensor products joined with ``*``, an entrywise-power twist ``^(M)``
    with M a power of the characteristic, and ``subfield(c)`` for the
    restriction of the c-fold twisted tensor product to the index-c
    subfield.  With row vectors, ``dual*natural^(M)`` flattened over an
    n x n matrix space is exactly the twisted conjugation A -> g^-1 A g^(M).
    """
    if n < 2:
        raise ValueError("rank too small")
    parsed = _parse_descriptor(descriptor, n, field.p)
    if parsed[0] == "subfield":
        return _build_subfield_rep(n, field, parsed[1])
    dim = descriptor_dim(n, field, descriptor)
    if dim > MAX_MODULE_DIM:
        raise OracleCapError("dimension %d exceeds cap" % (dim,))
    order = sl_order(n, field.q)
    if order > MAX_GROUP_ORDER:
        raise OracleCapError("group order %d exceeds cap" % (order,))

    def image(g):
        return functor_image(n, field, descriptor, g)

    gens = tuple(image(g) for g in transvection_generators(n, field))
    for g in gens:
        if mat_det(field, g) == 0:
            raise RuntimeError("generator image is singular")
    if len(gens[0]) != dim:
        raise RuntimeError("descriptor dimension mismatch")
    if n == 2:
        _check_sl2_presentation(field, image)
    kernel = _kernel_order(field, n, image)
    return FiniteModuleRep(
        field=field,
        dim=dim,
        generators=gens,
        descriptor=descriptor,
        kernel_order=kernel,
        n=n,
        group_field=field,
        group_order=order // kernel,
    )


def with_extra_generator(rep, matrix, order_factor=None, note="ext"):
    """Extend the acting group by one more matrix on the same module."""
    if len(matrix) != rep.dim:
        raise ValueError("extra generator has the wrong dimension")
    if mat_det(rep.field, matrix) == 0:
        raise ValueError("extra generator is singular")
    order = None
    if order_factor is not None and rep.group_order is not None:
        order = rep.group_order * order_factor
    return FiniteModuleRep(
        field=rep.field,
        dim=rep.dim,
        generators=rep.generators + (matrix,),
        descriptor=rep.descriptor + "+" + note,
        kernel_order=rep.kernel_order,
        n=rep.n,
        group_field=rep.group_field,
        group_order=order,
    )


# ---------------------------------------------------------------------------
# serialization


def serialize_rep(rep):
    f = rep.field
    gf = rep.group_field
    lines = [
        "regorb-module-rep v1",
        "n=%d p=%d e=%d modulus=%s descriptor=%s d=%d kernel=%d"
        % (
            rep.n,
            f.p,
            f.e,
            ",".join(str(c) for c in f.modulus),
            rep.descriptor,
            rep.dim,
            rep.kernel_order,
        ),
        "group p=%d e=%d order=%s"
        % (gf.p, gf.e, rep.group_order if rep.group_order is not None else "-"),
        "generators %d" % (len(rep.generators),),
    ]
    for i, g in enumerate(rep.generators):
        lines.append("gen %d" % (i,))
        for row in g:
            lines.append(" ".join(":".join(str(d) for d in f.digits(x)) for x in row))
    return "\n".join(lines) + "\n"


def parse_rep(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if lines[0] != "regorb-module-rep v1":
        raise ValueError("unrecognized serialization header")
    head = dict(part.split("=", 1) for part in lines[1].split(" "))
    n, p, e = int(head["n"]), int(head["p"]), int(head["e"])
    field = build_field(p, e)
    modulus = tuple(int(c) for c in head["modulus"].split(","))
    if modulus != field.modulus:
        raise ValueError("modulus does not match the deterministic choice")
    dim, kernel = int(head["d"]), int(head["kernel"])
    gline = lines[2].split(" ")
    gp, ge = int(gline[1].split("=")[1]), int(gline[2].split("=")[1])
    raw_order = gline[3].split("=")[1]
    order = None if raw_order == "-" else int(raw_order)
    count = int(lines[3].split(" ")[1])
    gens = []
    at = 4
    for _ in range(count):
        if not lines[at].startswith("gen "):
            raise ValueError("generator block expected")
        at += 1
        rows = []
        for _ in range(dim):
            cells = lines[at].split(" ")
            rows.append(
                tuple(field.undigits(int(d) for d in cell.split(":")) for cell in cells)
            )
            at += 1
        gens.append(tuple(rows))
    return FiniteModuleRep(
        field=field,
        dim=dim,
        generators=tuple(gens),
        descriptor=head["descriptor"],
        kernel_order=kernel,
        n=n,
        group_field=build_field(gp, ge),
        group_order=order,
    )


# ---------------------------------------------------------------------------
# group enumeration


def enumerate_group(field, generators, cap=MAX_ENUM_ORDER):
    """Breadth-first closure of the generated matrix group."""
    start = identity_matrix(len(generators[0]))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for g in generators:
                prod = mat_mul(field, m, g)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
                    if len(seen) > cap:
                        raise OracleCapError("group enumeration exceeded cap %d" % cap)
        frontier = nxt
    return tuple(seen)


def projective_canonical(field, matrix):
    """Scale so the first nonzero entry (row-major) is one."""
    for row in matrix:
        for x in row:
            if x:
                if x == 1:
                    return matrix
                return mat_scale(field, field.inv(x), matrix)
    raise ValueError("zero matrix has no projective representative")


def enumerate_pgl(n, field, cap=MAX_ENUM_ORDER):
    """All elements of PGL_n(q) in canonical projective form."""
    expected = pgl_order(n, field.q)
    if expected > cap:
        raise OracleCapError("PGL order %d exceeds cap %d" % (expected, cap))
    gens = [projective_canonical(field, g) for g in transvection_generators(n, field)]
    omega = primitive_element(field)
    diag = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    diag[0][0] = omega
    gens.append(projective_canonical(field, tuple(tuple(r) for r in diag)))
    start = identity_matrix(n)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = projective_canonical(field, mat_mul(field, m, g))
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    if len(seen) != expected:
        raise RuntimeError("PGL enumeration produced a wrong order")
    return tuple(seen)


# ---------------------------------------------------------------------------
# orbits, stabilizers, base size


@dataclass(frozen=True)
class OrbitReport:
    """Outcome of an orbit/stabilizer or base-size computation."""

    mode: str
    group_order: int
    space_size: int
    histogram: tuple
    regular_representatives: tuple
    regular_orbit_count: int
    minimal_stabilizer_order: int | None
    base_size: int | None
    base_witness: tuple | None
    base_bounds: tuple | None


def _decode(index, q, d):
    out = []
    for _ in range(d):
        out.append(index % q)
        index //= q
    return tuple(out)


def _encode(vec, q):
    idx = 0
    for x in reversed(vec):
        idx = idx * q + x
    return idx


def _orbit_closure(field, gens, start_index, q, d):
    """All indices in the orbit of the start vector under the generators."""
    orbit = [start_index]
    local = {start_index}
    at = 0
    while at < len(orbit):
        vec = _decode(orbit[at], q, d)
        at += 1
        for g in gens:
            idx = _encode(vec_mat(field, vec, g), q)
            if idx not in local:
                local.add(idx)
                orbit.append(idx)
    return orbit


def _group_order_of(rep, group):
    if group is not None:
        return len(group)
    if rep.group_order is not None:
        return rep.group_order
    return len(enumerate_group(rep.field, rep.generators))


def _log_lower(order, size):
    b = 1
    while size**b < order:
        b += 1
    return b


def orbit_report(
    rep,
    mode="exhaustive",
    *,
    group=None,
    regular_cap=16,
    samples=128,
    seed=11,
    threads=1,
):
    """Orbit census of the module.

    Exhaustive mode decomposes the whole space.  The scan over starting
    vectors is partitioned into ``threads`` ranges with disjoint ownership
    (a range owns the orbits whose minimal index falls inside it) and the
    merge is deterministic, so the result does not depend on the
    partitioning.  Randomized mode measures the orbits of seeded sample
    vectors only; it gives existence evidence, never a non-existence claim.
    """
    f = rep.field
    q, d = f.q, rep.dim
    size = q**d
    order = _group_order_of(rep, group)
    if mode not in ("exhaustive", "randomized"):
        raise ValueError("unknown mode %r" % (mode,))
    gens = rep.generators
    histogram = {}
    regulars = []
    regular_count = 0
    max_orbit = 0
    if mode == "exhaustive":
        if size > MAX_SPACE_SIZE:
            raise OracleCapError("space size %d exceeds cap" % (size,))
        parts = max(1, threads)
        edges = [size * i // parts for i in range(parts + 1)]
        found = []
        for lo, hi in zip(edges, edges[1:]):
            visited = bytearray(size)
            for idx in range(lo, hi):
                if visited[idx]:
                    continue
                orbit = _orbit_closure(f, gens, idx, q, d)
                mn = min(orbit)
                for o in orbit:
                    visited[o] = 1
                if mn >= lo:
                    found.append((mn, len(orbit)))
        found.sort()
        covered = 0
        for mn, length in found:
            covered += length
            if order % length:
                raise RuntimeError("orbit size does not divide the group order")
            histogram[length] = histogram.get(length, 0) + 1
            max_orbit = max(max_orbit, length)
            if length == order:
                regular_count += 1
                if len(regulars) < regular_cap:
                    regulars.append(_decode(mn, q, d))
        if covered != size:
            raise RuntimeError("orbit decomposition missed vectors")
        min_stab = order // max_orbit
        base_size = 1 if regular_count else None
        witness = (regulars[0],) if regular_count else None
        bounds = None if regular_count else (max(2, _log_lower(order, size)), None)
    else:
        rng = random.Random(seed)
        seen = set()
        for _ in range(samples):
            idx = rng.randrange(size)
            if idx in seen:
                continue
            orbit = _orbit_closure(f, gens, idx, q, d)
            seen.update(orbit)
            length = len(orbit)
            if order % length:
                raise RuntimeError("orbit size does not divide the group order")
            histogram[length] = histogram.get(length, 0) + 1
            max_orbit = max(max_orbit, length)
            if length == order:
                regular_count += 1
                if len(regulars) < regular_cap:
                    regulars.append(_decode(min(orbit), q, d))
        min_stab = None
        base_size = 1 if regular_count else None
        witness = (regulars[0],) if regular_count else None
        bounds = (_log_lower(order, size), None)
    return OrbitReport(
        mode=mode,
        group_order=order,
        space_size=size,
        histogram=tuple(sorted(histogram.items())),
        regular_representatives=tuple(regulars),
        regular_orbit_count=regular_count,
        minimal_stabilizer_order=min_stab,
        base_size=base_size,
        base_witness=witness,
        base_bounds=bounds,
    )


def stabilizer(field, elements, vector):
    return [g for g in elements if vec_mat(field, vector, g) == vector]


def _fixed_union(field, elements, q, d, size):
    """Bitmap of vectors fixed by at least one non-identity listed element."""
    mark = bytearray(size)
    ident = identity_matrix(d)
    for g in elements:
        if g == ident:
            continue
        basis = row_kernel_basis(field, mat_sub(field, g, ident))
        span = [tuple([0] * d)]
        for b in basis:
            span = [
                tuple(field.add(x, field.mul(c, y)) for x, y in zip(v, b))
                for v in span
                for c in range(q)
            ]
            if len(span) > size:
                raise OracleCapError("fixed-space enumeration exploded")
        for v in span:
            mark[_encode(v, q)] = 1
    return mark


def base_size_search(rep, limit=4, *, group=None):
    """Exact minimal base size up to ``limit``, else certified bounds."""
    f = rep.field
    q, d = f.q, rep.dim
    size = q**d
    if size > MAX_SPACE_SIZE:
        raise OracleCapError("space size %d exceeds cap" % (size,))
    elements = group if group is not None else enumerate_group(f, rep.generators)
    order = len(elements)
    census = orbit_report(rep, "exhaustive", group=elements)
    if census.regular_orbit_count:
        return census
    lower = max(2, _log_lower(order, size))

    reps = []
    visited = bytearray(size)
    for idx in range(size):
        if visited[idx]:
            continue
        orbit = _orbit_closure(f, rep.generators, idx, q, d)
        for o in orbit:
            visited[o] = 1
        reps.append((len(orbit), idx))
    reps.sort(reverse=True)

    def descend(stab_elems, depth):
        if len(stab_elems) == 1:
            return ()
        if depth == 0 or _log_lower(len(stab_elems), size) > depth:
            return None
        if depth == 1:
            mark = _fixed_union(f, stab_elems, q, d, size)
            for idx in range(size):
                if not mark[idx]:
                    return (_decode(idx, q, d),)
            return None
        seen_keys = set()
        for idx in range(size):
            w = _decode(idx, q, d)
            key = tuple(i for i, g in enumerate(stab_elems) if vec_mat(f, w, g) == w)
            if len(key) == len(stab_elems) or key in seen_keys:
                continue
            seen_keys.add(key)
            sub = [stab_elems[i] for i in key]
            if len(sub) == 1:
                return (w,)
            tail = descend(sub, depth - 1)
            if tail is not None:
                return (w,) + tail
        return None

    for b in range(lower, limit + 1):
        for _, idx in reps:
            v = _decode(idx, q, d)
            stab = stabilizer(f, elements, v)
            if len(stab) == order:
                continue
            tail = descend(stab, b - 1)
            if tail is not None:
                return OrbitReport(
                    mode="exhaustive",
                    group_order=order,
                    space_size=size,
                    histogram=census.histogram,
                    regular_representatives=(),
                    regular_orbit_count=0,
                    minimal_stabilizer_order=census.minimal_stabilizer_order,
                    base_size=b,
                    base_witness=(v,) + tail,
                    base_bounds=None,
                )
    # the search is complete below the limit, so the true value lies above it
    if size * order > 5 * 10**6:
        raise OracleCapError("greedy fallback too large for this module")
    chain = list(elements)
    upper_witness = []
    while len(chain) > 1:
        best = None
        for idx in range(size):
            w = _decode(idx, q, d)
            sub = [g for g in chain if vec_mat(f, w, g) == w]
            if len(sub) < len(chain) and (best is None or len(sub) < len(best[0])):
                best = (sub, w)
                if len(sub) == 1:
                    break
        chain = best[0]
        upper_witness.append(best[1])
    return OrbitReport(
        mode="exhaustive",
        group_order=order,
        space_size=size,
        histogram=census.histogram,
        regular_representatives=(),
        regular_orbit_count=0,
        minimal_stabilizer_order=census.minimal_stabilizer_order,
        base_size=None,
        base_witness=tuple(upper_witness),
        base_bounds=(limit + 1, len(upper_witness)),
    )


# ---------------------------------------------------------------------------
# the explicit base for the natural module over an extension field


def _solve_mod_p(rows, rhs, p, nvars):
    """Particular solution and kernel basis of a linear system over F_p."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(nvars):
        piv = next((i for i in range(r, len(aug)) if aug[i][c] % p), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] % p:
                fac = aug[i][c]
                aug[i] = [(x - fac * y) % p for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][nvars] % p:
            return None
    part = [0] * nvars
    for row, pc in zip(aug, pivots):
        part[pc] = row[nvars] % p
    free = [c for c in range(nvars) if c not in pivots]
    kernel = []
    for fc in free:
        v = [0] * nvars
        v[fc] = 1
        for row, pc in zip(aug[: len(pivots)], pivots):
            v[pc] = (-row[fc]) % p
        kernel.append(v)
    return part, kernel


def _prime_power(q):
    f = _factorize(q)
    if len(f) != 1:
        raise ValueError("%d is not a prime power" % (q,))
    ((p, e),) = f.items()
    return p, e


def natural_base_vectors(n, q, k):
    """The staggered spanning set used for the extension-field natural module."""
    p, e = _prime_power(q)
    big = build_field(p, e * k)
    omega = primitive_element(big)
    vectors = []
    for j in range((n + k - 1) // k):
        vec = [0] * n
        for i in range(1, min(k, n - j * k) + 1):
            vec[i - 1 + j * k] = big.pow(omega, i - 1)
        vectors.append(tuple(vec))
    return vectors


def verify_natural_base(n, q, k, automorphisms=(), *, extra_vector=None):
    """Check the explicit staggered base for the natural module over F_{q^k}.

    ``automorphisms`` may contain "diagonal" (extend SL to GL), "scalars"
    (all of F_{q^k}^x) and "field" (coordinatewise Frobenius).  Returns
    (ok, witness): ok says whether the measured base size matches the
    predicted ceil(n/k) + c, and the witness records the base found, the
    pointwise stabilizer of the staggered set, and what was confirmed.
    """
    p, e = _prime_power(q)
    if q**k > MAX_FIELD_SIZE:
        raise OracleCapError("extension field exceeds cap")
    autos = frozenset(automorphisms)
    if not autos <= {"diagonal", "scalars", "field"}:
        raise ValueError("unknown automorphism token")
    small = build_field(p, e)
    big = build_field(p, e * k)
    emb = subfield_embedding(small, big)
    bvecs = natural_base_vectors(n, q, k)
    space = big.q**n

    basis_small = [emb[small.p**t] for t in range(e)]
    a_range = range(e * k) if "field" in autos else (0,)
    lam_range = range(1, big.q) if "scalars" in autos else (1,)
    if len(a_range) * len(lam_range) > 4096:
        raise OracleCapError("too many semilinear branches to solve")
    nvars = n * n * e
    ek = e * k

    def solutions_fixing(points):
        """All semilinear elements (a, T) of the group fixing the points."""
        out = {}
        for a in a_range:
            for lam in lam_range:
                sol = _solve_mod_p(*_assemble(points, a, lam), p, nvars)
                if sol is None:
                    continue
                part, kernel = sol
                if p ** len(kernel) > 4096:
                    raise OracleCapError("stabilizer solution space too large")
                combos = [part]
                for kb in kernel:
                    combos = [
                        [(x + c * y) % p for x, y in zip(v2, kb)]
                        for v2 in combos
                        for c in range(p)
                    ]
                for assign in combos:
                    el = _element_from(assign, a, lam)
                    if el is not None:
                        out[el] = None
        return list(out)

    def fixes(elem, w):
        a, t_big = elem
        tw = tuple(big.pow(x, p**a) for x in w) if a else w
        return vec_mat(big, tw, t_big) == w

    def _assemble(points, a, lam):
        rows, rhs = [], []
        for v in points:
            tv = tuple(big.pow(x, p**a) for x in v) if a else v
            for s in range(n):
                coeffs = {}
                for r in range(n):
                    for t in range(e):
                        var = (r * n + s) * e + t
                        coeffs[var] = big.mul(big.mul(tv[r], lam), basis_small[t])
                target = big.digits(v[s])
                for dd in range(ek):
                    row = [0] * nvars
                    for var, cval in coeffs.items():
                        row[var] = big.digits(cval)[dd]
                    rows.append(row)
                    rhs.append(target[dd])
        return rows, rhs

    def _element_from(assign, a, lam):
        m_small = tuple(
            tuple(
                small.undigits(assign[(r * n + s) * e : (r * n + s + 1) * e])
                for s in range(n)
            )
            for r in range(n)
        )
        det = mat_det(small, m_small)
        if det == 0 or ("diagonal" not in autos and det != 1):
            return None
        t_big = tuple(tuple(big.mul(lam, emb[x]) for x in row) for row in m_small)
        return (a, t_big)

    def nontrivial_fixing_element(points):
        """A non-identity group element fixing the points, else None.

        None is only returned when every branch was enumerated exactly;
        for degenerate point sets with huge solution spaces the search
        probes the affine space along its kernel basis instead, and raises
        if it cannot certify either way.
        """
        ident_local = (0, identity_matrix(n))
        undecided = False
        for a in a_range:
            for lam in lam_range:
                sol = _solve_mod_p(*_assemble(points, a, lam), p, nvars)
                if sol is None:
                    continue
                part, kernel = sol
                if p ** len(kernel) <= 4096:
                    combos = [part]
                    for kb in kernel:
                        combos = [
                            [(x + c * y) % p for x, y in zip(v2, kb)]
                            for v2 in combos
                            for c in range(p)
                        ]
                    for assign in combos:
                        el = _element_from(assign, a, lam)
                        if el is not None and el != ident_local:
                            for w in points:
                                if not fixes(el, w):
                                    raise RuntimeError("solver produced a non-fix")
                            return el
                    continue
                anchors = [list(part)]
                ident_assign = [0] * nvars
                for r in range(n):
                    ident_assign[(r * n + r) * e] = 1
                if a == 0 and lam == 1:
                    anchors.append(ident_assign)
                probes = list(anchors)
                for base_a in anchors:
                    for kb in kernel:
                        probes.append([(x + y) % p for x, y in zip(base_a, kb)])
                    for i1 in range(len(kernel)):
                        for i2 in range(i1 + 1, len(kernel)):
                            probes.append(
                                [
                                    (x + y + z) % p
                                    for x, y, z in zip(base_a, kernel[i1], kernel[i2])
                                ]
                            )
                rng = random.Random((a, lam, len(kernel)).__hash__() & 0xFFFF)
                for _ in range(500):
                    assign = list(part)
                    for kb in kernel:
                        c = rng.randrange(p)
                        if c:
                            assign = [(x + c * y) % p for x, y in zip(assign, kb)]
                    probes.append(assign)
                hit = None
                for assign in probes:
                    el = _element_from(assign, a, lam)
                    if el is not None and el != ident_local:
                        hit = el
                        break
                if hit is None:
                    undecided = True
                else:
                    for w in points:
                        if not fixes(hit, w):
                            raise RuntimeError("solver produced a non-fix")
                    return hit
        if undecided:
            raise OracleCapError("stabilizer triviality undecidable at this size")
        return None

    stab = solutions_fixing(bvecs)
    ident = (0, identity_matrix(n))
    if ident not in stab:
        raise RuntimeError("identity missing from the stabilizer solve")
    nontrivial = [el for el in stab if el != ident]
    base = list(bvecs)
    extended = False
    if nontrivial:
        extended = True
        if extra_vector is not None:
            candidates = [tuple(extra_vector)]
        else:
            if space > MAX_FIELD_SIZE:
                raise OracleCapError("vector scan exceeds cap")
            candidates = (_decode(i, big.q, n) for i in range(space))
        found = None
        for w in candidates:
            if all(not fixes(el, w) for el in nontrivial):
                if solutions_fixing(bvecs + [w]) == [ident]:
                    found = w
                    break
        if found is None:
            raise RuntimeError("no extension vector completes the base")
        base.append(found)
    measured = len(base)

    # arithmetic group order and the predicted base size
    i = math.gcd(n, k)
    scalars_beyond = "scalars" in autos and i > 1
    m_count = gl_order(n, q) if "diagonal" in autos else sl_order(n, q)
    lam_count = big.q - 1 if "scalars" in autos else 1
    if "scalars" in autos:
        overlap = (q - 1) if "diagonal" in autos else math.gcd(n, q - 1)
    else:
        overlap = 1
    order = m_count * lam_count // overlap
    if "field" in autos:
        order *= ek
    ceil_nk = -(-n // k)
    if "field" not in autos:
        expected = ceil_nk + (1 if scalars_beyond else 0)
        exact = True
    else:
        cond = scalars_beyond or order > q ** (k * n * ceil_nk)
        expected = ceil_nk + 1 if cond else None
        exact = cond

    minimal = None
    below = measured - 1
    if below >= 1:
        if order > space**below:
            minimal = True
        elif below == 1 and space <= 4096:
            minimal = all(
                nontrivial_fixing_element([_decode(idx, big.q, n)]) is not None
                for idx in range(space)
            )
        elif below == 2 and space <= 512:
            minimal = True
            for i1 in _semilinear_orbit_mins(n, small, big, autos, space):
                v1 = _decode(i1, big.q, n)
                for i2 in range(space):
                    if nontrivial_fixing_element([v1, _decode(i2, big.q, n)]) is None:
                        minimal = False
                        break
                if minimal is False:
                    break

    if exact:
        ok = measured == expected and minimal is not False
    else:
        ok = measured <= ceil_nk + 1
    witness = {
        "base": tuple(base),
        "size": measured,
        "expected": expected,
        "stabilizer_order": len(stab),
        "extended": extended,
        "group_order": order,
        "minimal_confirmed": minimal,
    }
    return ok, witness


def _semilinear_orbit_mins(n, small, big, autos, space):
    """Minimal index per orbit of the semilinear group on the module."""
    emb = subfield_embedding(small, big)
    gens = []
    for g in transvection_generators(n, small):
        gens.append(("m", tuple(tuple(emb[x] for x in row) for row in g)))
    if "diagonal" in autos:
        diag = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        diag[0][0] = emb[primitive_element(small)]
        gens.append(("m", tuple(tuple(r) for r in diag)))
    if "scalars" in autos:
        gens.append(("m", scalar_matrix(big, n, primitive_element(big))))
    if "field" in autos:
        gens.append(("f", None))
    mins = []
    visited = bytearray(space)
    for start in range(space):
        if visited[start]:
            continue
        orbit = [start]
        visited[start] = 1
        at = 0
        while at < len(orbit):
            vec = _decode(orbit[at], big.q, n)
            at += 1
            for kind, mat in gens:
                if kind == "m":
                    nxt = _encode(vec_mat(big, vec, mat), big.q)
                else:
                    nxt = _encode(tuple(big.frob(x) for x in vec), big.q)
                if not visited[nxt]:
                    visited[nxt] = 1
                    orbit.append(nxt)
        mins.append(min(orbit))
    return mins


# ---------------------------------------------------------------------------
# Jordan types and the permutation-sum oracle


def jordan_type(matrix, p, field=None):
    """Jordan block partition of a unipotent matrix, largest part first."""
    f = field if field is not None else build_field(p, 1)
    if f.p != p:
        raise ValueError("field characteristic mismatch")
    d = len(matrix)
    for row in matrix:
        for x in row:
            if not 0 <= x < f.q:
                raise ValueError("entry out of field range")
    nil = mat_sub(f, matrix, identity_matrix(d))
    ranks = [d]
    power = identity_matrix(d)
    for _ in range(d):
        power = mat_mul(f, power, nil)
        ranks.append(mat_rank(f, power))
        if ranks[-1] == 0:
            break
    if ranks[-1] != 0:
        raise ValueError("matrix is not unipotent")
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    parts = []
    for j in range(len(at_least), 0, -1):
        exactly = at_least[j - 1] - (at_least[j] if j < len(at_least) else 0)
        parts.extend([j] * exactly)
    return tuple(sorted(parts, reverse=True))


def perm_sum_max_oracle(a):
    """Brute-force maximum of sum(a_i * a_{nu(i)}) over permutations nu."""
    a = tuple(a)
    if len(a) > 8:
        raise ValueError("exhaustive search is capped at length 8")
    if any(x > y for x, y in zip(a, a[1:])):
        raise ValueError("input must be weakly increasing")
    if not a:
        return 0, ()
    best = None
    argmax = []
    for nu in permutations(range(len(a))):
        val = sum(a[i] * a[nu[i]] for i in range(len(a)))
        if best is None or val > best:
            best = val
            argmax = [nu]
        elif val == best:
            argmax.append(nu)
    ident = tuple(range(len(a)))
    if ident not in argmax:
        raise RuntimeError("identity permutation is unexpectedly not optimal")
    return best, ident


# ---------------------------------------------------------------------------
# exact censuses: matrix ranks, unipotent classes, semisimple spectra


def rank_matrix_count(n, k, q):
    """Number of n x n matrices of rank k, by the row-extension recurrence."""
    if not 0 <= k <= n:
        return 0
    prev = {0: 1}
    for _ in range(n):
        nxt = {}
        for r, cnt in prev.items():
            nxt[r] = nxt.get(r, 0) + cnt * q**r
            nxt[r + 1] = nxt.get(r + 1, 0) + cnt * (q**n - q**r)
        prev = nxt
    return prev.get(k, 0)


def brute_rank_census(n, field):
    size = field.q ** (n * n)
    if size > (1 << 18):
        raise OracleCapError("brute-force rank census capped at 2^18 matrices")
    out = {}
    for idx in range(size):
        flat = _decode(idx, field.q, n * n)
        m = tuple(flat[i * n : (i + 1) * n] for i in range(n))
        r = mat_rank(field, m)
        out[r] = out.get(r, 0) + 1
    return out


def _conjugate_partition(mu):
    if not mu:
        return ()
    return tuple(sum(1 for part in mu if part >= i) for i in range(1, mu[0] + 1))


def unipotent_class_size(n, q, mu):
    """Size of the conjugacy class with the given Jordan type in GL_n(q)."""
    mu = tuple(sorted(mu, reverse=True))
    if sum(mu) != n:
        raise ValueError("partition does not sum to n")
    conj = _conjugate_partition(mu)
    exp = sum(c * c for c in conj)
    mults = {}
    for part in mu:
        mults[part] = mults.get(part, 0) + 1
    cent = 1
    for m in mults.values():
        exp -= m * (m + 1) // 2
        for j in range(1, m + 1):
            cent *= q**j - 1
    cent *= q**exp
    if gl_order(n, q) % cent:
        raise RuntimeError("centralizer order does not divide the group order")
    return gl_order(n, q) // cent


def _partitions_limited(total, max_part):
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions_limited(total - first, first):
            yield (first,) + rest


def unipotent_census(n, q, *, order_p_only=True):
    """Jordan type -> element count for nontrivial unipotents in PGL_n(q).

    Unipotent elements of PGL_n(q) biject with those of GL_n(q).  With
    ``order_p_only`` the census keeps only the classes of exponent p, i.e.
    partitions with no part above the characteristic.
    """
    p, _ = _prime_power(q)
    cap = min(n, p) if order_p_only else n
    out = {}
    for mu in _partitions_limited(n, cap):
        if all(part == 1 for part in mu):
            continue
        out[mu] = unipotent_class_size(n, q, mu)
    return out


def semisimple_census(n, q, r):
    """Eigenvalue-multiplicity signature -> count of order-r elements of PGL_n(q).

    For prime r coprime to q, a lift x satisfies x^r = lambda I and the
    factor shape of t^r - lambda over F_q depends only on whether lambda is
    an r-th power.  Summing matrix counts over lambda and dividing by q - 1
    counts projective elements exactly; scalar lifts are excluded.
    """
    p, _ = _prime_power(q)
    if not _is_prime(r):
        raise ValueError("order must be prime")
    if r == p:
        raise ValueError("use the unipotent census for order p")
    lam_types = []
    if (q - 1) % r == 0:
        lam_types.append(((1,) * r, (q - 1) // r))
        lam_types.append(((r,), (q - 1) - (q - 1) // r))
    else:
        s = _mult_order(q, r)
        lam_types.append(((1,) + (s,) * ((r - 1) // s), q - 1))
    totals = {}
    for degrees, nlam in lam_types:
        if nlam == 0:
            continue
        # multiplicity of each eigenvalue block; blocks of degree deg use deg
        # dimensions apiece, so the weighted sum must hit n exactly
        ranges = [range(n // deg + 1) for deg in degrees]
        for comp in product(*ranges):
            if sum(deg * m for deg, m in zip(degrees, comp)) != n:
                continue
            used = [(deg, m) for deg, m in zip(degrees, comp) if m]
            if len(used) == 1 and used[0] == (1, n):
                continue  # scalar lifts are central, not of order r projectively
            count = gl_order(n, q)
            for deg, m in used:
                count //= gl_order(m, q**deg)
            sig = tuple(
                sorted((m for deg, m in used for _ in range(deg)), reverse=True)
            )
            totals[sig] = totals.get(sig, 0) + nlam * count
    out = {}
    for sig, val in totals.items():
        if val % (q - 1):
            raise RuntimeError("projective count is not integral")
        out[sig] = val // (q - 1)
    return out


def relevant_primes(n, q):
    """Primes that can appear as element orders in PGL_n(q)."""
    p, _ = _prime_power(q)
    primes = {p}
    for i in range(1, n + 1):
        primes.update(_factorize(q**i - 1))
    primes.discard(1)
    return tuple(sorted(primes))


def prime_order_count(n, q, r):
    p, _ = _prime_power(q)
    if r == p:
        return sum(unipotent_census(n, q).values())
    return sum(semisimple_census(n, q, r).values())


def enumerated_projective_census(n, field, cap=200000):
    """Exact order/unipotent/semisimple censuses from a full PGL enumeration."""
    elements = enumerate_pgl(n, field, cap=cap)
    q = field.q
    p = field.p
    ident = identity_matrix(n)
    orders = {}
    unip = {}
    semi = {}
    for m in elements:
        if m == ident:
            continue
        o = 1
        cur = m
        while cur != ident:
            cur = projective_canonical(field, mat_mul(field, cur, m))
            o += 1
        orders[o] = orders.get(o, 0) + 1
        if not _is_prime(o):
            continue
        if o == p:
            for lam in range(1, q):
                try:
                    jt = jordan_type(mat_scale(field, field.inv(lam), m), p, field=field)
                except ValueError:
                    continue
                unip[jt] = unip.get(jt, 0) + 1
                break
            else:
                raise RuntimeError("order-p element with no unipotent rescale")
        else:
            sig = []
            for deg, mult in _factor_multiset(field, char_poly(field, m)):
                sig.extend([mult] * deg)
            sig = tuple(sorted(sig, reverse=True))
            semi[(o, sig)] = semi.get((o, sig), 0) + 1
    return {"orders": orders, "unipotent": unip, "semisimple": semi}


# ---------------------------------------------------------------------------
# seeded sampling


def random_word(field, generators, rng, length=16):
    m = identity_matrix(len(generators[0]))
    for _ in range(length):
        m = mat_mul(field, m, generators[rng.randrange(len(generators))])
    return m


def random_prime_order_elements(n, field, count, seed=11):
    """Seeded (r, h) samples with h in SL_n(q) of prime order r."""
    rng = random.Random(seed)
    gens = transvection_generators(n, field)
    out = []
    guard = 0
    while len(out) < count and guard < 50 * count:
        guard += 1
        m = random_word(field, gens, rng, length=12 + rng.randrange(9))
        o = matrix_order(field, m)
        if o == 1:
            continue
        primes = sorted(_factorize(o))
        r = primes[rng.randrange(len(primes))]
        out.append((r, mat_pow(field, m, o // r)))
    if len(out) < count:
        raise RuntimeError("sampling failed to reach the requested count")
    return out
