"""Type A_l root systems, weight lattice arithmetic, Weyl orbits, dominance.

Everything downstream (characters, nets, codimension bounds) consumes this
module.  Weights are stored in the fundamental-weight basis; the Weyl group
S_{l+1} is realized as permutations of epsilon-coordinates, which makes every
operation exact integer/rational arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


class Weight:
    """A weight written in the fundamental-weight basis.

    ``coeffs[i]`` is the coefficient of the (i+1)-th fundamental weight.
    Instances are immutable in practice (nothing mutates ``coeffs``) and
    hashable, so they can key dictionaries of multiplicities.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(int(c) for c in coeffs)

    @property
    def rank(self):
        return len(self.coeffs)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_dominant(self):
        return all(c >= 0 for c in self.coeffs)

    def reversed(self):
        """Image under the diagram flip i <-> l+1-i."""
        return Weight(self.coeffs[::-1])

    def __add__(self, other):
        return Weight(a + b for a, b in zip(self.coeffs, other.coeffs, strict=True))

    def __sub__(self, other):
        return Weight(a - b for a, b in zip(self.coeffs, other.coeffs, strict=True))

    def __neg__(self):
        return Weight(-c for c in self.coeffs)

    def __mul__(self, k):
        return Weight(k * c for c in self.coeffs)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Weight) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __lt__(self, other):
        # Lexicographic on coefficients; used only to fix deterministic orders.
        return self.coeffs < other.coeffs

    def __le__(self, other):
        return self.coeffs <= other.coeffs

    def __repr__(self):
        return "Weight(%s)" % (", ".join(str(c) for c in self.coeffs))


class RankMismatch(ValueError):
    """A weight's length does not match the root system's rank."""


class RootSystemA:
    """The root system of type A_l together with its weight lattice.

    The Cartan matrix has 2 on the diagonal, -1 on adjacent off-diagonals.
    Epsilon-coordinates live in Z^{l+1} modulo the all-ones vector; the
    canonical representative is shifted so its minimum entry is 0, which makes
    the coordinate multiset (hence the "length" sum) a Weyl-orbit invariant.
    """

    def __init__(self, l):
        if l < 1:
            raise ValueError("rank must be >= 1, got %r" % (l,))
        self.rank = l
        self.n = l + 1
        self.cartan = tuple(
            tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(l))
            for i in range(l)
        )
        # (A^{-1})_{ij} = min(i,j) * (l+1-max(i,j)) / (l+1), 1-based indices.
        self.cartan_inverse = tuple(
            tuple(
                Fraction(min(i, j) * (l + 1 - max(i, j)), l + 1)
                for j in range(1, l + 1)
            )
            for i in range(1, l + 1)
        )

    # -- basic vectors ----------------------------------------------------

    def zero(self):
        return Weight([0] * self.rank)

    def fundamental_weight(self, i):
        """The i-th fundamental weight (1-based)."""
        self._check_index(i)
        return Weight(1 if j == i else 0 for j in range(1, self.rank + 1))

    def simple_root(self, i):
        """The i-th simple root, as a Weight (the i-th Cartan column)."""
        self._check_index(i)
        return Weight(self.cartan[j][i - 1] for j in range(self.rank))

    def positive_roots(self):
        """All positive roots e_i - e_j (i < j), as Weights.

        Ordered by (i, j); the root e_i - e_j is alpha_i + ... + alpha_{j-1}.
        """
        roots = []
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                eps = [0] * self.n
                eps[i - 1] = 1
                eps[j - 1] = -1
                roots.append(self.weight_from_eps(eps))
        return roots

    def rho(self):
        """Half-sum of positive roots = sum of fundamental weights."""
        return Weight([1] * self.rank)

    def _check_index(self, i):
        if not 1 <= i <= self.rank:
            raise IndexError("simple index %r out of range 1..%d" % (i, self.rank))

    def _check_weight(self, w):
        if w.rank != self.rank:
            raise RankMismatch(
                "weight of rank %d in system of rank %d" % (w.rank, self.rank)
            )

    # -- epsilon coordinates ----------------------------------------------

    def eps_coords(self, w):
        """Canonical Z^{l+1}-mod-ones coordinates of ``w`` (min entry 0)."""
        self._check_weight(w)
        v = [0] * self.n
        acc = 0
        # Partial sums from the right: v_i = c_i + c_{i+1} + ... + c_l.
        for i in range(self.rank - 1, -1, -1):
            acc += w.coeffs[i]
            v[i] = acc
        shift = min(v)
        return tuple(x - shift for x in v)

    def weight_from_eps(self, v):
        """Inverse of eps_coords: consecutive differences."""
        if len(v) != self.n:
            raise RankMismatch(
                "epsilon vector of length %d, expected %d" % (len(v), self.n)
            )
        return Weight(v[i] - v[i + 1] for i in range(self.rank))

    def eps_length(self, w):
        """Sum of canonical epsilon coordinates; constant on Weyl orbits."""
        return sum(self.eps_coords(w))

    # -- Weyl group --------------------------------------------------------

    def simple_reflection(self, i, w):
        """s_i(w) = w - <w, alpha_i^v> alpha_i; swaps eps entries i, i+1."""
        self._check_index(i)
        self._check_weight(w)
        c = w.coeffs[i - 1]
        if c == 0:
            return w
        return w - c * self.simple_root(i)

    def weyl_orbit(self, w):
        """The full W-orbit of ``w`` as a list sorted by coefficients.

        Computed by closure under simple reflections.  For dominant ``w`` the
        orbit contains exactly one dominant weight (``w`` itself).
        """
        self._check_weight(w)
        seen = {w}
        frontier = [w]
        while frontier:
            nxt = []
            for u in frontier:
                for i in range(1, self.rank + 1):
                    v = self.simple_reflection(i, u)
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return sorted(seen)

    def orbit_size(self, w):
        """|W.w| = (l+1)! / prod over equal-eps-entry groups of mult!."""
        return factorial(self.n) // self.stabilizer_order(w)

    def stabilizer_order(self, w):
        """|Stab_W(w)| = product of factorials of eps-entry multiplicities."""
        v = self.eps_coords(w)
        counts = {}
        for x in v:
            counts[x] = counts.get(x, 0) + 1
        order = 1
        for m in counts.values():
            order *= factorial(m)
        return order

    def dominant_representative(self, w):
        """The unique dominant weight in W.w (eps coordinates sorted down)."""
        v = sorted(self.eps_coords(w), reverse=True)
        return self.weight_from_eps(v)

    # -- dominance order ---------------------------------------------------

    def to_simple_root_coords(self, w):
        """Expand ``w`` over the simple roots; exact rational coefficients."""
        self._check_weight(w)
        return tuple(
            sum(row[j] * w.coeffs[j] for j in range(self.rank))
            for row in self.cartan_inverse
        )

    def dominance_leq(self, mu, lam):
        """True iff lam - mu is a nonnegative rational combination of simple
        roots.  (In practice the combination is integral for weights of one
        module; rational coefficients are permitted by the definition.)
        """
        diff = lam - mu
        return all(c >= 0 for c in self.to_simple_root_coords(diff))

    def inner(self, w1, w2):
        """W-invariant bilinear form, normalized so roots have norm 2.

        In epsilon coordinates: (v, u) = sum v_i u_i - (sum v)(sum u)/(l+1).
        Well defined on Z^{l+1} mod ones.
        """
        v = self.eps_coords(w1)
        u = self.eps_coords(w2)
        dot = sum(a * b for a, b in zip(v, u))
        return Fraction(dot) - Fraction(sum(v) * sum(u), self.n)


class Subsystem:
    """A standard subsystem, generated by a subset of the simple roots.

    ``indices`` are 1-based positions in the Dynkin diagram; the irreducible
    factors are the maximal consecutive runs, each of type A_(run length).
    """

    def __init__(self, rank, indices):
        indices = tuple(sorted(set(int(i) for i in indices)))
        for i in indices:
            if not 1 <= i <= rank:
                raise IndexError("simple index %r out of range 1..%d" % (i, rank))
        self.rank = rank
        self.indices = indices
        self.factors = self._runs(indices)
        self.label = self._type_label(self.factors)

    @staticmethod
    def _runs(indices):
        runs = []
        cur = []
        for i in indices:
            if cur and i == cur[-1] + 1:
                cur.append(i)
            else:
                if cur:
                    runs.append(tuple(cur))
                cur = [i]
        if cur:
            runs.append(tuple(cur))
        return tuple(runs)

    @staticmethod
    def _type_label(factors):
        if not factors:
            return "1"
        ranks = sorted((len(f) for f in factors), reverse=True)
        parts = []
        i = 0
        while i < len(ranks):
            j = i
            while j < len(ranks) and ranks[j] == ranks[i]:
                j += 1
            mult = j - i
            parts.append("A%d" % ranks[i] + ("^%d" % mult if mult > 1 else ""))
            i = j
        return "".join(parts)

    def factor_of(self, index):
        """Position (0-based) of the factor containing a generator index."""
        for k, f in enumerate(self.factors):
            if index in f:
                return k
        raise KeyError("index %r not in subsystem" % (index,))

    def positive_root_runs(self):
        """Index sets of the subsystem's positive roots.

        For type A factors these are the consecutive runs inside each factor;
        a semisimple element misses the subsystem exactly when every one of
        these run-sums of root values is nontrivial.
        """
        runs = []
        for f in self.factors:
            m = len(f)
            for a in range(m):
                for b in range(a, m):
                    runs.append(f[a : b + 1])
        return runs

    def __eq__(self, other):
        return (
            isinstance(other, Subsystem)
            and self.rank == other.rank
            and self.indices == other.indices
        )

    def __hash__(self):
        return hash((self.rank, self.indices))

    def __repr__(self):
        return "Subsystem(rank=%d, indices=%s, label=%s)" % (
            self.rank,
            self.indices,
            self.label,
        )
