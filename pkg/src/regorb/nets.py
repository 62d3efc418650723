"""Nets of weights relative to a root subsystem, and their codimension bounds.

Fix a character of a rank-l type A module and a subsystem Psi generated by a
set of simple roots.  Weights that differ by an integer combination of the
roots of Psi fall into equivalence classes called Psi-nets; for rank-one Psi
these are the familiar alpha-strings.  Each net yields a lower bound for the
codimension of the fixed space of

* a semisimple element s of prime order r none of whose eigenvalue ratios
  matches a root of Psi, and
* a regular unipotent element u of the subsystem subgroup attached to Psi,

and per-net bounds sum to module-wide ones.  The semisimple bound maximises
a single eigenspace over all admissible eigenvalue patterns; the unipotent
bound splits the net into composition factors and counts Jordan blocks on
each factor, realised by explicit small matrices over F_p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd

from .charmod import ModuleSpec, irreducible_character, module_dimension, steinberg_decompose
from ._linalg import (
    fixed_space_dim,
    identity,
    jordan_block_unipotent,
    kernel_basis,
    kron,
    quotient_action,
    restrict_action,
    coords_in_basis,
    sym_power,
    wedge_power,
)
from .rootsys import RankMismatch, RootSystemA, Subsystem, Weight

# Kronecker products of composition-factor matrices stay small in practice;
# anything past this is a sign the net should not be handled this way.
_MATRIX_SIZE_CAP = 4096


def _require_prime(n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ValueError("expected a prime, got %r" % (n,))
    if any(n % k == 0 for k in range(2, int(n ** 0.5) + 1)):
        raise ValueError("expected a prime, got %r" % (n,))


class PsiNet:
    """One maximal set of weights congruent modulo the roots of a subsystem.

    ``members`` maps each weight of the net to its multiplicity in the
    parent character.  ``highest`` is the member from which all others are
    reached by subtracting roots of the subsystem; ``shape``, present only
    for a rank-one subsystem, lists the parent Weyl-orbit index of each
    string member from top to bottom.
    """

    __slots__ = ("subsystem", "members", "highest", "shape")

    def __init__(self, subsystem, members, highest, shape=None):
        self.subsystem = subsystem
        self.members = dict(members)
        self.highest = highest
        self.shape = shape

    @property
    def dimension(self):
        return sum(self.members.values())

    def omega_label(self):
        """Highest member written in the fundamental weights of each factor."""
        parts = []
        for factor in self.subsystem.factors:
            terms = []
            for pos, i in enumerate(factor, start=1):
                c = self.highest.coeffs[i - 1]
                if c == 1:
                    terms.append("w%d" % pos)
                elif c:
                    terms.append("%dw%d" % (c, pos))
            parts.append("+".join(terms) if terms else "0")
        return "|".join(parts) if parts else "0"

    def signature(self):
        if self.shape is not None:
            return ".".join("m%d" % i for i in self.shape)
        return self.omega_label()

    def __repr__(self):
        return "PsiNet(%s, %s, dim %d)" % (
            self.subsystem.label,
            self.signature(),
            self.dimension,
        )


def _orbit_indices(char, system):
    """Number the dominant orbits of ``char`` from the top weight down."""
    doms = list(char.dominant_multiplicities())
    tops = [w for w in doms if all(system.dominance_leq(v, w) for v in doms)]
    if tops:
        top = tops[0]

        def height(w):
            return int(sum(system.to_simple_root_coords(top - w)))

        order = sorted(doms, key=lambda w: (height(w), tuple(-c for c in w.coeffs)))
    else:
        order = sorted(doms, key=lambda w: tuple(-c for c in w.coeffs))
    return {w: i for i, w in enumerate(order, start=1)}


def psi_nets(char, psi):
    """Partition the support of ``char`` into nets relative to ``psi``.

    Two weights share a net exactly when their difference is an integer
    combination of the simple roots generating the subsystem.  The returned
    nets are sorted by the coefficients of their highest members and cover
    every weight of the character exactly once.
    """
    if psi.rank != char.rank:
        raise RankMismatch(
            "subsystem rank %d does not match character rank %d"
            % (psi.rank, char.rank)
        )
    system = RootSystemA(char.rank)
    inside = set(psi.indices)
    outside = [j for j in range(char.rank) if (j + 1) not in inside]
    groups = {}
    for w, m in char.entries().items():
        coords = system.to_simple_root_coords(w)
        key = tuple(coords[j] for j in outside)
        groups.setdefault(key, {})[w] = m

    want_shapes = len(psi.indices) == 1
    orbit_index = _orbit_indices(char, system) if want_shapes else None

    nets = []
    for members in groups.values():
        highest = max(
            members,
            key=lambda w: (
                sum(system.to_simple_root_coords(w)[i - 1] for i in psi.indices),
                w.coeffs,
            ),
        )
        shape = None
        if want_shapes:
            alpha = system.simple_root(psi.indices[0])
            shape = []
            w = highest
            while w in members:
                shape.append(orbit_index[system.dominant_representative(w)])
                w = w - alpha
            # alpha-strings through a character have no gaps
            assert len(shape) == len(members)
            shape = tuple(shape)
        nets.append(PsiNet(psi, members, highest, shape))
    nets.sort(key=lambda net: net.highest.coeffs)
    return nets


# --- semisimple contributions -------------------------------------------

def _primitive(vec):
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    out = tuple(x // g for x in vec)
    for x in out:
        if x:
            return out if x > 0 else tuple(-y for y in out)
    return out


def _parallel(a, b):
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if a[i] * b[j] != a[j] * b[i]:
                return False
    return True


def _project(vec, d):
    t = next(i for i, x in enumerate(d) if x)
    return tuple(d[t] * vec[s] - d[s] * vec[t] for s in range(len(d)) if s != t)


def _max_class_integer(points, roots):
    """Largest fiber of a -> chi.a over integer chi nonzero on all roots.

    ``points`` maps integer coordinate tuples to multiplicities.  Any chi
    merging two points must vanish on their difference, so it suffices to
    scan primitive difference directions, project along each admissible one
    and recurse on the quotient lattice.
    """
    best = max(points.values())
    if not next(iter(points)):
        return sum(points.values())
    keys = list(points)
    seen = set()
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            d = _primitive(tuple(x - y for x, y in zip(keys[i], keys[j])))
            if d in seen:
                continue
            seen.add(d)
            if any(_parallel(r, d) for r in roots):
                continue
            proj = {}
            for a, m in points.items():
                pa = _project(a, d)
                proj[pa] = proj.get(pa, 0) + m
            best = max(best, _max_class_integer(proj, [_project(r, d) for r in roots]))
    return best


@lru_cache(maxsize=None)
def _chi_space_nonempty(factor_shape, r):
    """Whether some chi mod r avoids zero on every positive root sum."""
    runs = []
    offset = 0
    for size in factor_shape:
        for a in range(size):
            for b in range(a, size):
                runs.append(tuple(range(offset + a, offset + b + 1)))
        offset += size
    for chi in product(range(r), repeat=sum(factor_shape)):
        if all(sum(chi[t] for t in run) % r for run in runs):
            return True
    return False


def _net_points(net):
    """Member multiplicities keyed by root coordinates below the top."""
    system = RootSystemA(len(net.highest.coeffs))
    idxs = net.subsystem.indices
    agg = {}
    for w, m in net.members.items():
        coords = system.to_simple_root_coords(net.highest - w)
        a = []
        for i in idxs:
            c = coords[i - 1]
            assert c.denominator == 1
            a.append(int(c))
        key = tuple(a)
        agg[key] = agg.get(key, 0) + m
    return agg


def c_semisimple(net, r):
    """Fixed-space codimension forced by the net on order-r semisimple parts.

    The element is assumed to have no eigenvalue ratio equal to a root of
    the net's subsystem.  Its eigenvalue pattern on the net is described by
    a character chi of the root lattice of the subsystem with values in
    Z/r, nonzero on every positive root; the net then contributes at least
    its dimension minus the largest single eigenvalue class.  ``r`` may be
    the string "generic", meaning a value valid for every sufficiently
    large prime.

    Raises ValueError if no admissible chi exists mod r (no element of
    order r misses the subsystem at all; e.g. r = 2 against an A2 factor).
    """
    idxs = net.subsystem.indices
    runs = net.subsystem.positive_root_runs()
    root_vecs = [tuple(1 if i in run else 0 for i in idxs) for run in runs]
    agg = _net_points(net)
    if r == "generic":
        return net.dimension - _max_class_integer(agg, root_vecs)
    _require_prime(r)
    pos = {i: t for t, i in enumerate(idxs)}
    run_pos = [tuple(pos[i] for i in run) for run in runs]
    best = None
    for chi in product(range(r), repeat=len(idxs)):
        if any(sum(chi[t] for t in rp) % r == 0 for rp in run_pos):
            continue
        classes = {}
        for a, m in agg.items():
            v = sum(x * y for x, y in zip(chi, a)) % r
            classes[v] = classes.get(v, 0) + m
        top = max(classes.values())
        if best is None or top > best:
            best = top
    if best is None:
        raise ValueError(
            "no semisimple element of order %d avoids every root of %s"
            % (r, net.subsystem.label)
        )
    return net.dimension - best


# --- unipotent contributions --------------------------------------------

def _label_height(label):
    total = 0
    for part in label:
        m = len(part)
        for j, c in enumerate(part, start=1):
            total += c * j * (m + 1 - j)
    return total


@lru_cache(maxsize=None)
def _steinberg_pieces(part, p):
    e = 1
    while p ** e <= max(part):
        e += 1
    return tuple(steinberg_decompose(Weight(part), p, e))


@lru_cache(maxsize=None)
def _factor_char(part, p):
    """Character of the irreducible with highest weight ``part`` mod p.

    Returned as a dict keyed by coefficient tuples, or None when a needed
    restricted character is not certified.
    """
    rank = len(part)
    out = {(0,) * rank: 1}
    for piece, twist in _steinberg_pieces(part, p):
        ic = irreducible_character(ModuleSpec(rank, piece.coeffs, p))
        if ic.flags:
            return None
        scale = p ** twist
        scaled = {}
        for w, m in ic.entries().items():
            scaled[tuple(scale * c for c in w.coeffs)] = m
        merged = {}
        for k1, m1 in out.items():
            for k2, m2 in scaled.items():
                key = tuple(x + y for x, y in zip(k1, k2))
                merged[key] = merged.get(key, 0) + m1 * m2
        out = merged
    return out


def _label_char(label, p):
    factor_chars = []
    for part in label:
        ch = _factor_char(part, p)
        if ch is None:
            return None
        factor_chars.append(ch)
    out = {}
    for combo in product(*(fc.items() for fc in factor_chars)):
        key = tuple(k for k, _ in combo)
        mult = 1
        for _, m in combo:
            mult *= m
        out[key] = out.get(key, 0) + mult
    return out


def _peel(theta, p):
    """Greedy composition-factor extraction from a genuine character.

    The maximal-height weight of a character is the highest weight of one
    of its composition factors with full multiplicity, so repeatedly
    subtracting that irreducible character recovers the factor list.  Any
    inconsistency (negative leftover, non-dominant top, uncertified factor
    character) aborts with None.
    """
    theta = dict(theta)
    layers = []
    while theta:
        top = max(theta, key=lambda t: (_label_height(t), t))
        if any(c < 0 for part in top for c in part):
            return None
        mult = theta[top]
        if mult < 0:
            return None
        char = _label_char(top, p)
        if char is None:
            return None
        for key, m in char.items():
            left = theta.get(key, 0) - mult * m
            if left:
                theta[key] = left
            else:
                theta.pop(key, None)
        if any(v < 0 for v in theta.values()):
            return None
        layers.append((top, mult))
    return layers


def _mixed_tensor_matrix(n, k, p):
    """Regular unipotent on the irreducible inside V (x) wedge^k V.

    The kernel of the wedge map V (x) wedge^k V -> wedge^(k+1) V carries
    the highest weight; when p divides k+1 an embedded copy of
    wedge^(k+1) V survives inside the kernel and is factored out.
    """
    from itertools import combinations

    J = jordan_block_unipotent(n, p)
    u = kron(J, wedge_power(J, k, p), p)
    subsets = list(combinations(range(n), k))
    sidx = {s: i for i, s in enumerate(subsets)}
    big = list(combinations(range(n), k + 1))
    bidx = {s: i for i, s in enumerate(big)}
    dim = n * len(subsets)
    wedge_map = [[0] * dim for _ in big]
    for i in range(n):
        for s in subsets:
            if i in s:
                continue
            t = tuple(sorted(s + (i,)))
            sign = (-1) ** t.index(i) % p
            wedge_map[bidx[t]][i * len(subsets) + sidx[s]] = sign
    kern = kernel_basis([tuple(r) for r in wedge_map], p)
    act = restrict_action(u, kern, p)
    if (k + 1) % p == 0:
        emb = []
        for t in big:
            v = [0] * dim
            for posn, i in enumerate(t):
                rest = tuple(x for x in t if x != i)
                v[i * len(subsets) + sidx[rest]] = (-1) ** posn % p
            emb.append(tuple(v))
        act = quotient_action(act, coords_in_basis(kern, emb, p), p)
    return act


def _two_one_matrix(n, p):
    """Regular unipotent on the irreducible inside Sym^2 V (x) wedge^(n-1) V."""
    from itertools import combinations, combinations_with_replacement

    if (n + 1) % p == 0:
        return None  # an extra constituent appears; no explicit model wired up
    J = jordan_block_unipotent(n, p)
    u = kron(sym_power(J, 2, p), wedge_power(J, n - 1, p), p)
    pairs = list(combinations_with_replacement(range(n), 2))
    pidx = {s: i for i, s in enumerate(pairs)}
    subsets = list(combinations(range(n), n - 1))
    sidx = {s: i for i, s in enumerate(subsets)}
    dim = len(pairs) * len(subsets)
    contraction = [[0] * dim for _ in range(n)]
    for (x, y) in pairs:
        for s in subsets:
            col = pidx[(x, y)] * len(subsets) + sidx[s]
            for a, b in ((x, y), (y, x)):
                if b in s:
                    continue
                t = tuple(sorted(s + (b,)))
                sign = (-1) ** t.index(b)
                contraction[a][col] = (contraction[a][col] + sign) % p
    kern = kernel_basis([tuple(r) for r in contraction], p)
    return restrict_action(u, kern, p)


def _u_matrix_route(rank, coeffs, p):
    n = rank + 1
    if all(c == 0 for c in coeffs):
        return identity(1)
    J = jordan_block_unipotent(n, p)
    nz = [(i + 1, c) for i, c in enumerate(coeffs) if c]
    if len(nz) == 1:
        idx, c = nz[0]
        if idx == 1:
            return sym_power(J, c, p)
        if c == 1:
            return wedge_power(J, idx, p)
        if idx == rank:
            # dual of a symmetric power; duality preserves the Jordan type
            return sym_power(J, c, p)
        return None
    if len(nz) == 2:
        (i1, c1), (i2, c2) = nz
        if (i1, c1) == (1, 1) and c2 == 1:
            return _mixed_tensor_matrix(n, i2, p)
        if (i2, c2) == (rank, 1) and c1 == 1:
            return _mixed_tensor_matrix(n, n - i1, p)
        if (i1, c1) == (1, 2) and (i2, c2) == (rank, 1):
            return _two_one_matrix(n, p)
        if (i1, c1) == (1, 1) and (i2, c2) == (rank, 2):
            return _two_one_matrix(n, p)
    return None


@lru_cache(maxsize=None)
def _restricted_u_matrix(rank, coeffs, p):
    mat = _u_matrix_route(rank, coeffs, p)
    if mat is None:
        return None
    try:
        expected = module_dimension(ModuleSpec(rank, coeffs, p))
    except ValueError:
        return None
    if len(mat) != expected:
        return None
    return mat


@lru_cache(maxsize=None)
def _label_fixed_codim(label, p):
    """dim minus fixed-space dimension of u on the irreducible of ``label``.

    Frobenius twists do not change Jordan types, so each Steinberg piece
    contributes its untwisted matrix to one Kronecker product.
    """
    mats = []
    size = 1
    for part in label:
        for piece, _twist in _steinberg_pieces(part, p):
            m = _restricted_u_matrix(len(part), tuple(piece.coeffs), p)
            if m is None:
                return None
            size *= len(m)
            if size > _MATRIX_SIZE_CAP:
                return None
            mats.append(m)
    total = mats[0]
    for m in mats[1:]:
        total = kron(total, m, p)
    return len(total) - fixed_space_dim(total, p)


def _unipotent_details(net, p):
    psi = net.subsystem
    if not psi.indices:
        raise ValueError("empty subsystem has no regular unipotent")
    if any(len(f) > 3 for f in psi.factors):
        raise ValueError(
            "unsupported subsystem type %s; only products of A1..A3 factors" % psi.label
        )
    _require_prime(p)
    theta = {}
    for w, m in net.members.items():
        key = tuple(tuple(w.coeffs[i - 1] for i in f) for f in psi.factors)
        theta[key] = theta.get(key, 0) + m
    layers = _peel(theta, p)
    if layers is None:
        return 0, "indeterminate"
    total = 0
    for label, mult in layers:
        codim = _label_fixed_codim(label, p)
        if codim is None:
            return 0, "indeterminate"
        total += mult * codim
    return total, ("peeled" if len(layers) > 1 else "ok")


def c_unipotent(net, p):
    """Fixed-space codimension forced by the net on a regular unipotent.

    The net, viewed as a module for the subsystem subgroup, is split into
    composition factors; the fixed space on each factor has dimension equal
    to its number of Jordan blocks, and fixed points can only accumulate
    across factors, so the sum of the per-factor codimensions is a valid
    lower bound.  A net whose factors cannot be certified contributes 0.
    """
    value, _status = _unipotent_details(net, p)
    return value


# --- table assembly ------------------------------------------------------

@dataclass(frozen=True)
class NetRow:
    """One displayed line: all nets sharing a signature and identical cells."""

    signature: str
    count: int
    net_dimension: int
    c_s: tuple
    c_u: tuple
    flags: tuple


@dataclass(frozen=True)
class ContributionReport:
    """Per-net codimension bounds and their totals for one subsystem.

    ``rows`` group nets with equal signature and cell values; the semisimple
    cells line up with ``primes_r + ("generic",)`` and the unipotent cells
    with ``primes_p``.  A cell is None when no element of that order misses
    the subsystem, or when the unipotent analysis does not apply.
    """

    subsystem: Subsystem
    primes_r: tuple
    primes_p: tuple
    rows: tuple
    net_count: int
    total_dimension: int
    semisimple_totals: tuple
    unipotent_totals: tuple
    flags: tuple

    def total_semisimple(self, r):
        cols = self.primes_r + ("generic",)
        return self.semisimple_totals[cols.index(r)]

    def total_unipotent(self, p):
        return self.unipotent_totals[self.primes_p.index(p)]

    def to_text(self):
        headers = (
            ["net", "mult", "dim"]
            + ["s:r%d" % r for r in self.primes_r]
            + ["s:generic"]
            + ["u:p%d" % p for p in self.primes_p]
            + ["flags"]
        )
        body = []
        for row in self.rows:
            body.append(
                [row.signature, str(row.count), str(row.net_dimension)]
                + [_text_cell(v) for v in row.c_s]
                + [_text_cell(v) for v in row.c_u]
                + [";".join(row.flags)]
            )
        body.append(
            ["total", str(self.net_count), str(self.total_dimension)]
            + [_text_cell(v) for v in self.semisimple_totals]
            + [_text_cell(v) for v in self.unipotent_totals]
            + [";".join(self.flags)]
        )
        widths = [
            max(len(headers[c]), max(len(line[c]) for line in body))
            for c in range(len(headers))
        ]
        out = []
        for line in [headers] + body:
            cells = []
            for c, text in enumerate(line):
                if c == 0 or c == len(headers) - 1:
                    cells.append(text.ljust(widths[c]))
                else:
                    cells.append(text.rjust(widths[c]))
            out.append("  ".join(cells).rstrip())
        return "\n".join(out) + "\n"

    def to_csv(self):
        header = (
            "net_signature,multiplicity,c_s_r2,c_s_r3,c_s_generic,"
            "c_u_p2,c_u_p3,c_u_p5,flags"
        )

        def s_cell(values, r):
            if r in self.primes_r:
                return _csv_cell(values[self.primes_r.index(r)])
            return ""

        def u_cell(values, p):
            if p in self.primes_p:
                return _csv_cell(values[self.primes_p.index(p)])
            return ""

        lines = [header]
        stats = [
            (row.signature, row.count, row.c_s, row.c_u, row.flags)
            for row in self.rows
        ]
        stats.append(
            ("TOTAL", self.net_count, self.semisimple_totals, self.unipotent_totals, self.flags)
        )
        for signature, count, cs, cu, flags in stats:
            lines.append(
                ",".join(
                    [
                        signature,
                        str(count),
                        s_cell(cs, 2),
                        s_cell(cs, 3),
                        _csv_cell(cs[-1]),
                        u_cell(cu, 2),
                        u_cell(cu, 3),
                        u_cell(cu, 5),
                        ";".join(flags),
                    ]
                )
            )
        return "\n".join(lines) + "\n"


def _text_cell(v):
    return "-" if v is None else str(v)


def _csv_cell(v):
    return "" if v is None else str(v)


def contribution_table(char, psi, primes_r=(2, 3), primes_p=(2, 3, 5)):
    """Net-by-net codimension table for one character and subsystem.

    Rows are grouped by signature and identical cells, listed with the
    highest member first; totals close the table.  Semisimple columns that
    admit no eigenvalue pattern at all (such as r = 2 against an A2 factor)
    and unipotent columns for unsupported subsystems are left blank.
    """
    primes_r = tuple(primes_r)
    primes_p = tuple(primes_p)
    for r in primes_r:
        _require_prime(r)
    for p in primes_p:
        _require_prime(p)
    nets = psi_nets(char, psi)
    shape = tuple(len(f) for f in psi.factors)
    s_ok = {r: _chi_space_nonempty(shape, r) for r in primes_r}
    u_ok = bool(psi.indices) and all(len(f) <= 3 for f in psi.factors)

    totals_s = {r: (0 if s_ok[r] else None) for r in primes_r}
    totals_s["generic"] = 0
    totals_u = {p: (0 if u_ok else None) for p in primes_p}
    grouped = {}
    order = []
    report_flags = set()
    for net in reversed(nets):
        cs = []
        for r in primes_r:
            if s_ok[r]:
                v = c_semisimple(net, r)
                totals_s[r] += v
            else:
                v = None
            cs.append(v)
        generic = c_semisimple(net, "generic")
        totals_s["generic"] += generic
        cs.append(generic)
        cu = []
        flags = set()
        for p in primes_p:
            if u_ok:
                v, status = _unipotent_details(net, p)
                totals_u[p] += v
                if status == "indeterminate":
                    flags.add("indeterminate:p%d" % p)
                elif status == "peeled":
                    flags.add("peeled")
            else:
                v = None
            cu.append(v)
        report_flags |= flags
        key = (net.signature(), net.dimension, tuple(cs), tuple(cu), tuple(sorted(flags)))
        if key not in grouped:
            grouped[key] = 0
            order.append(key)
        grouped[key] += 1

    rows = tuple(
        NetRow(
            signature=key[0],
            count=grouped[key],
            net_dimension=key[1],
            c_s=key[2],
            c_u=key[3],
            flags=key[4],
        )
        for key in order
    )
    return ContributionReport(
        subsystem=psi,
        primes_r=primes_r,
        primes_p=primes_p,
        rows=rows,
        net_count=len(nets),
        total_dimension=sum(net.dimension for net in nets),
        semisimple_totals=tuple(totals_s[r] for r in primes_r) + (totals_s["generic"],),
        unipotent_totals=tuple(totals_u[p] for p in primes_p),
        flags=tuple(sorted(report_flags)),
    )


def graph_fix_bound(char):
    """Upper bound for the fixed space of any graph involution on the module.

    A graph automorphism composed with an inner element permutes weight
    spaces by the coefficient flip; weight spaces moved off themselves
    contribute at most half their dimension to the fixed space.  Requires
    the support (with multiplicities) to be closed under the flip.
    """
    entries = char.entries()
    fixed = 0
    for w, m in entries.items():
        wr = w.reversed()
        if entries.get(wr) != m:
            raise ValueError("character support is not closed under the coefficient flip")
        if wr == w:
            fixed += m
    return (char.dimension + fixed) // 2
