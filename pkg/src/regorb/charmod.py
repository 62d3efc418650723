"""Formal characters and dimensions of highest-weight modules in type A.

Characteristic-zero data is computed exactly: dominant weights of V(lambda)
by closure under positive-root subtraction, multiplicities by the Freudenthal
recursion, and the dimension by the Weyl product formula, which doubles as an
independent cross-check of the recursion.

In prime characteristic the irreducible module L(lambda) can be smaller than
V(lambda).  For the restricted module families this package analyzes, the
difference is a small per-orbit multiplicity drop expressed through
eps(i) = 1 iff p divides i.  Those drops are curated in ``_correction_drops``.
A highest weight outside the curated families yields the characteristic-zero
character flagged ``uncorrected``, so downstream consumers can surface the
approximation instead of silently trusting it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .rootsys import RankMismatch, RootSystemA, Weight

DEFAULT_DIMENSION_CAP = 10 ** 6


class CapExceeded(RuntimeError):
    """A requested character is larger than the configured dimension cap."""


def _is_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class EpsilonRule:
    """eps(i) = 1 if the field characteristic divides i, else 0."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError("characteristic must be prime, got %r" % (self.p,))

    def __call__(self, i):
        return 1 if i % self.p == 0 else 0


class ModuleSpec:
    """A highest-weight module V(weight) for SL_{l+1} over F_q, q = p^e.

    ``k`` is the realization-field exponent relative to q: the module is a
    vector space over F_{q^k}.  It stays 1 in the main analysis and becomes
    1/2 (resp. an integer > 1) in subfield (resp. extension-field) setups.
    """

    __slots__ = ("l", "weight", "p", "e", "k")

    def __init__(self, l, weight, p, e=1, k=1):
        l = int(l)
        if l < 1:
            raise ValueError("rank must be >= 1, got %r" % (l,))
        if not isinstance(weight, Weight):
            weight = Weight(weight)
        if weight.rank != l:
            raise RankMismatch(
                "highest weight of rank %d in a rank-%d system" % (weight.rank, l)
            )
        if not weight.is_dominant():
            raise ValueError("highest weight must be dominant: %r" % (weight,))
        p = int(p)
        if not _is_prime(p):
            raise ValueError("characteristic must be prime, got %r" % (p,))
        e = int(e)
        if e < 1:
            raise ValueError("field exponent must be >= 1, got %r" % (e,))
        k = Fraction(k)
        if k <= 0:
            raise ValueError("realization exponent must be positive, got %r" % (k,))
        self.l = l
        self.weight = weight
        self.p = p
        self.e = e
        self.k = k

    @property
    def n(self):
        return self.l + 1

    @property
    def q(self):
        return self.p ** self.e

    @property
    def eps(self):
        return EpsilonRule(self.p)

    def is_restricted(self):
        """True if every coefficient is below p."""
        return all(ci < self.p for ci in self.weight.coeffs)

    def _key(self):
        return (self.l, self.weight, self.p, self.e, self.k)

    def __eq__(self, other):
        return isinstance(other, ModuleSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        tail = "" if self.k == 1 else ", k=%s" % (self.k,)
        return "ModuleSpec(l=%d, weight=%r, p=%d, e=%d%s)" % (
            self.l,
            self.weight,
            self.p,
            self.e,
            tail,
        )


class Character:
    """A Weyl-invariant weight multiset, stored on dominant representatives.

    Multiplicity is constant on Weyl orbits, so only the dominant weight of
    each orbit is kept; ``entries`` expands the full support on demand.
    ``flags`` carries data-quality markers such as ``uncorrected``.
    """

    __slots__ = ("rank", "flags", "_dominant", "_dim", "_full")

    def __init__(self, rank, dominant_multiplicities, flags=()):
        self.rank = int(rank)
        checked = {}
        for w, m in dominant_multiplicities.items():
            if not isinstance(w, Weight):
                w = Weight(w)
            if w.rank != self.rank:
                raise RankMismatch(
                    "weight of rank %d in a rank-%d character" % (w.rank, self.rank)
                )
            if not w.is_dominant():
                raise ValueError("character keys must be dominant, got %r" % (w,))
            m = int(m)
            if m <= 0:
                raise ValueError("multiplicities must be positive, got %r" % (m,))
            checked[w] = m
        self._dominant = checked
        self.flags = tuple(flags)
        self._dim = None
        self._full = None

    def dominant_multiplicities(self):
        """Mapping {dominant weight: multiplicity}, as a fresh dict."""
        return dict(self._dominant)

    def dominant_items(self):
        """(weight, multiplicity) pairs sorted by coefficient tuple."""
        return sorted(self._dominant.items())

    @property
    def dimension(self):
        if self._dim is None:
            system = RootSystemA(self.rank)
            self._dim = sum(
                m * system.orbit_size(w) for w, m in self._dominant.items()
            )
        return self._dim

    def multiplicity(self, w):
        system = RootSystemA(self.rank)
        return self._dominant.get(system.dominant_representative(w), 0)

    def entries(self):
        """The full {weight: multiplicity} map over every Weyl orbit."""
        if self._full is None:
            system = RootSystemA(self.rank)
            full = {}
            for w, m in self._dominant.items():
                for v in system.weyl_orbit(w):
                    full[v] = m
            self._full = full
        return dict(self._full)

    def serialize(self):
        """One line per dominant weight: "c1 c2 ... cl : mult", sorted."""
        lines = []
        for w, m in self.dominant_items():
            lines.append("%s : %d" % (" ".join(str(c) for c in w.coeffs), m))
        return "\n".join(lines) + "\n"

    @classmethod
    def deserialize(cls, text, flags=()):
        entries = {}
        rank = None
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            left, sep, right = line.partition(":")
            if not sep:
                raise ValueError("malformed character line: %r" % (raw,))
            w = Weight(int(t) for t in left.split())
            if rank is None:
                rank = w.rank
            entries[w] = int(right)
        if rank is None:
            raise ValueError("empty character text")
        return cls(rank, entries, flags)

    def _key(self):
        return (self.rank, frozenset(self._dominant.items()), self.flags)

    def __eq__(self, other):
        return isinstance(other, Character) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "Character(rank=%d, orbits=%d, dim=%d%s)" % (
            self.rank,
            len(self._dominant),
            self.dimension,
            "".join(", " + f for f in self.flags),
        )


# -- characteristic zero ----------------------------------------------------


def weyl_dimension(system, lam):
    """Characteristic-zero dimension of V(lam) by the product formula."""
    rho = system.rho()
    top = lam + rho
    acc = Fraction(1)
    for alpha in system.positive_roots():
        acc *= system.inner(top, alpha) / system.inner(rho, alpha)
    assert acc.denominator == 1
    return int(acc)


def dominant_weights_below(system, lam):
    """All dominant mu <= lam in the dominance order, lam included.

    Covers in the dominance order on dominant weights differ by a single
    positive root, so closing under dominant positive-root subtractions
    reaches everything.  For dominant lam this set is exactly the set of
    dominant weights of V(lam).
    """
    pos = system.positive_roots()
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for alpha in pos:
                nu = mu - alpha
                if nu not in seen and nu.is_dominant():
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return seen


def _freudenthal(system, lam):
    """Multiplicities of the dominant weights of V(lam), by recursion.

    Weights are processed by increasing height of lam - mu, so every orbit
    strictly above mu is already known when mu's turn comes.  The upward
    alpha-string through a weight has no gaps, which justifies stopping at
    the first non-weight.
    """
    pos = system.positive_roots()
    rho = system.rho()
    top = lam + rho
    c_top = system.inner(top, top)

    def height(mu):
        return int(sum(system.to_simple_root_coords(lam - mu)))

    mults = {}
    for mu in sorted(dominant_weights_below(system, lam), key=height):
        if mu == lam:
            mults[mu] = 1
            continue
        acc = Fraction(0)
        for alpha in pos:
            k = 1
            while True:
                nu = mu + k * alpha
                m = mults.get(system.dominant_representative(nu))
                if m is None:
                    break
                acc += m * system.inner(nu, alpha)
                k += 1
        mu_rho = mu + rho
        m = 2 * acc / (c_top - system.inner(mu_rho, mu_rho))
        assert m.denominator == 1 and m > 0
        mults[mu] = int(m)
    return mults


def weyl_character(spec, cap=DEFAULT_DIMENSION_CAP):
    """Characteristic-zero character of V(spec.weight).

    Raises CapExceeded before doing any real work if the Weyl dimension
    passes ``cap`` (pass cap=None to disable); sweeps over large families
    rely on this being cheap.
    """
    system = RootSystemA(spec.l)
    lam = spec.weight
    dim = weyl_dimension(system, lam)
    if cap is not None and dim > cap:
        raise CapExceeded("dim V(%r) = %d exceeds cap %d" % (lam, dim, cap))
    char = Character(spec.l, _freudenthal(system, lam))
    # The recursion and the product formula must agree exactly.
    assert char.dimension == dim
    return char


# -- prime characteristic ---------------------------------------------------


def _eps_orbit_key(system, head):
    """Dominant weight whose epsilon coordinates are ``head`` padded with 0s."""
    v = list(head) + [0] * (system.n - len(head))
    return system.weight_from_eps(v)


def _correction_drops(spec):
    """Per-orbit multiplicity drops for the curated module families.

    Returns {dominant weight: drop} with drops possibly 0 for the given p,
    or None when (l, weight, p) is outside the curated table.  Keys are
    expressed uniformly in epsilon coordinates so that boundary ranks,
    where an inner orbit degenerates to the zero weight, need no special
    casing.
    """
    l, p = spec.l, spec.p
    system = RootSystemA(l)
    eps = spec.eps
    nz = [(i + 1, ci) for i, ci in enumerate(spec.weight.coeffs) if ci]

    if not nz:
        return {}

    if len(nz) == 1:
        k, m = nz[0]
        if m == 1:
            # Fundamental modules are minuscule: a single Weyl orbit.
            return {}
        if k in (1, l):
            # Sym^m of the natural module or its dual; restricted means
            # m < p, where the symmetric power stays irreducible.
            return {}
        if k == 2 and m == 2 and 3 <= l <= 17:
            return {_eps_orbit_key(system, (1, 1, 1, 1)): eps(3)}
        if k == 2 and m == 3 and l == 3:
            return {}
        if k == 3 and m == 2 and l == 5:
            return {
                _eps_orbit_key(system, (2, 1, 1, 1, 1)): eps(3),
                system.zero(): 4 * eps(3),
            }
        return None

    if len(nz) == 2:
        (k1, m1), (k2, m2) = nz
        if (m1, m2) == (1, 1) and k1 == 1:
            # V(lambda_1 + lambda_k) has one inner orbit, with multiplicity
            # k in characteristic zero, dropping by eps(k+1).  At k = l the
            # inner orbit is the zero weight of the adjoint module.
            return {_eps_orbit_key(system, (1,) * (k2 + 1)): eps(k2 + 1)}
        if (m1, m2) == (2, 1) and k1 == 1 and k2 == l and l >= 2:
            return {system.fundamental_weight(1): eps(l + 2)}
        if (m1, m2) == (2, 1) and k1 == 1 and k2 == 2 and 3 <= l <= 5:
            return {}
        if (m1, m2) == (1, 1) and (k1, k2) == (2, 3) and 4 <= l <= 7:
            return {
                _eps_orbit_key(system, (2, 1, 1, 1)): eps(3),
                _eps_orbit_key(system, (1,) * 5): eps(2) + 4 * eps(3),
            }
        if (m1, m2) == (1, 1) and (k1, k2) == (2, 4) and l == 5:
            return {
                _eps_orbit_key(system, (2, 1, 1, 1, 1)): eps(2),
                _eps_orbit_key(system, (1,) * 6): eps(5) + 5 * eps(2),
            }
        if (m1, m2) == (3, 1) and (k1, k2) == (1, 2) and l == 2:
            return {
                system.fundamental_weight(1) * 2: eps(5),
                system.fundamental_weight(2): eps(5),
            }
        if (m1, m2) == (2, 1) and (k1, k2) == (1, 3) and l == 4:
            if p == 5:
                # dim 126 in characteristic zero, 103 at p = 5.
                return {
                    _eps_orbit_key(system, (2, 1, 1, 1)): 1,
                    system.zero(): 3,
                }
            return None
        if (m1, m2) == (1, 2) and (k1, k2) == (1, 2) and l == 3:
            return {}
        return None

    if len(nz) == 3 and spec.weight.coeffs == (1, 1, 1):
        return {
            system.fundamental_weight(3) * 2: eps(3),
            system.fundamental_weight(1) * 2: eps(3),
            system.fundamental_weight(2): eps(5) + 2 * eps(3),
        }
    return None


def _drops_with_duality(spec):
    """Curated drops for the weight or, failing that, for its dual."""
    drops = _correction_drops(spec)
    if drops is not None:
        return drops
    flipped = ModuleSpec(spec.l, spec.weight.reversed(), spec.p, spec.e, spec.k)
    drops = _correction_drops(flipped)
    if drops is None:
        return None
    # Duality flips every orbit along with the highest weight.
    return {w.reversed(): d for w, d in drops.items()}


def irreducible_character(spec, cap=DEFAULT_DIMENSION_CAP):
    """Character of the restricted irreducible module L(spec.weight).

    Applies the curated per-orbit drops to the characteristic-zero
    character.  Outside the curated families the characteristic-zero
    character is returned with flag ``uncorrected``; its total is then only
    an upper bound for the true dimension.
    """
    if not spec.is_restricted():
        raise ValueError(
            "weight %r is not %d-restricted; use steinberg_decompose first"
            % (spec.weight, spec.p)
        )
    base = weyl_character(spec, cap=cap)
    drops = _drops_with_duality(spec)
    if drops is None:
        return Character(spec.l, base.dominant_multiplicities(), ("uncorrected",))
    mults = base.dominant_multiplicities()
    for w, drop in drops.items():
        if not drop:
            continue
        if mults.get(w, 0) < drop:
            raise RuntimeError("curated drop %d exceeds multiplicity at %r" % (drop, w))
        mults[w] -= drop
        if not mults[w]:
            del mults[w]
    return Character(spec.l, mults)


def steinberg_decompose(weight, p, e):
    """Write ``weight`` as a sum of p-power twists of restricted weights.

    Returns [(w, a), ...] with weight = sum of p^a * w, every w restricted
    and nonzero, and exponents strictly increasing; a restricted weight
    (including zero) comes back as [(weight, 0)].  Coordinates must stay
    below p^e for the twists to make sense over F_{p^e}.
    """
    if not isinstance(weight, Weight):
        weight = Weight(weight)
    if not weight.is_dominant():
        raise ValueError("weight must be dominant, got %r" % (weight,))
    if not _is_prime(p):
        raise ValueError("characteristic must be prime, got %r" % (p,))
    if e < 1:
        raise ValueError("field exponent must be >= 1, got %r" % (e,))
    bound = p ** e
    if any(ci >= bound for ci in weight.coeffs):
        raise ValueError(
            "coordinate %d is not below p^e = %d" % (max(weight.coeffs), bound)
        )
    factors = []
    for a in range(e):
        digits = Weight((ci // p ** a) % p for ci in weight.coeffs)
        if not digits.is_zero():
            factors.append((digits, a))
    if not factors:
        factors.append((weight, 0))
    return factors


def _closed_form_dimension(spec):
    """Closed-form dimension for the commonest families, else None.

    Kept deliberately independent of the character machinery so the two
    routes cross-check each other in the tests.
    """
    l, n = spec.l, spec.l + 1
    eps = spec.eps
    for c in (spec.weight.coeffs, spec.weight.coeffs[::-1]):
        nz = [(i + 1, ci) for i, ci in enumerate(c) if ci]
        if not nz:
            return 1
        if len(nz) == 1:
            k, m = nz[0]
            if k == 1:
                return comb(l + m, m)
            if m == 1:
                return comb(n, k)
            if k == 2 and m == 2 and 3 <= l <= 17:
                return comb(n, 2) ** 2 - n * comb(n, 3) - eps(3) * comb(n, 4)
        if len(nz) == 2:
            (k1, m1), (k2, m2) = nz
            if (m1, m2) == (1, 1) and k1 == 1:
                return n * comb(n, k2) - (1 + eps(k2 + 1)) * comb(n, k2 + 1)
            if (m1, m2) == (2, 1) and k1 == 1 and k2 == l and l >= 2:
                return 3 * comb(l + 2, 3) + comb(l + 1, 2) - eps(l + 2) * n
    return None


def module_dimension(spec):
    """Dimension of the irreducible module with highest weight spec.weight.

    Non-restricted weights go through the Steinberg factorization (twists
    preserve dimension).  Restricted ones use a closed form when available
    and otherwise sum the curated character; for a family outside the
    curated table that total is the characteristic-zero dimension, an upper
    bound, and ``irreducible_character`` is the place to see the flag.
    """
    if not spec.is_restricted():
        dim = 1
        for w, _a in steinberg_decompose(spec.weight, spec.p, spec.e):
            dim *= module_dimension(ModuleSpec(spec.l, w, spec.p, spec.e, spec.k))
        return dim
    d = _closed_form_dimension(spec)
    if d is not None:
        return d
    return irreducible_character(spec).dimension


# -- candidate lists --------------------------------------------------------

# Restricted families that survive the dimension screens, with their l
# ranges (upper bound None = unbounded).  Patterns give {fundamental index:
# coefficient} as a function of l.
_RESTRICTED_FAMILIES = (
    (lambda l: {1: 1}, 1, None),
    (lambda l: {2: 1}, 2, None),
    (lambda l: {1: 2}, 1, None),
    (lambda l: {1: 1, l: 1}, 2, None),
    (lambda l: {3: 1}, 5, None),
    (lambda l: {1: 3}, 1, None),
    (lambda l: {1: 1, 2: 1}, 2, None),
    (lambda l: {1: 1, l - 1: 1}, 4, None),
    (lambda l: {1: 2, l: 1}, 2, None),
    (lambda l: {4: 1}, 7, 28),
    (lambda l: {2: 2}, 3, 17),
    (lambda l: {5: 1}, 9, 14),
    (lambda l: {1: 4}, 1, 13),
    (lambda l: {6: 1}, 11, 12),
    (lambda l: {1: 1, 3: 1}, 5, 11),
    (lambda l: {1: 1, l - 2: 1}, 6, 8),
    (lambda l: {1: 1, 4: 1}, 7, 7),
    (lambda l: {2: 1, 3: 1}, 4, 7),
    (lambda l: {1: 2, 2: 1}, 2, 5),
    (lambda l: {2: 1, 4: 1}, 5, 5),
    (lambda l: {3: 2}, 5, 5),
    (lambda l: {1: 3, 2: 1}, 2, 4),
    (lambda l: {1: 2, 3: 1}, 4, 4),
    (lambda l: {1: 1, 2: 1, 3: 1}, 3, 3),
    (lambda l: {1: 1, 2: 2}, 3, 3),
    (lambda l: {1: 5}, 2, 3),
    (lambda l: {2: 3}, 3, 3),
)

# Twisted-tensor candidates V(i1) (x) V(i2)^(p^b): factor patterns plus the
# l range of the pair.
_TENSOR_FAMILIES = (
    (lambda l: {1: 1}, lambda l: {1: 1}, 1, None),
    (lambda l: {1: 1}, lambda l: {l: 1}, 2, None),
    (lambda l: {1: 1}, lambda l: {2: 1}, 2, None),
    (lambda l: {1: 1}, lambda l: {l - 1: 1}, 2, None),
    (lambda l: {1: 1}, lambda l: {1: 2}, 1, None),
    (lambda l: {1: 1}, lambda l: {l: 2}, 2, None),
    (lambda l: {1: 1}, lambda l: {1: 1, l: 1}, 2, None),
    (lambda l: {1: 1}, lambda l: {3: 1}, 5, 7),
    (lambda l: {1: 1}, lambda l: {l - 2: 1}, 5, 7),
    (lambda l: {2: 1}, lambda l: {2: 1}, 3, 4),
    (lambda l: {2: 1}, lambda l: {l - 1: 1}, 4, 5),
    (lambda l: {2: 1}, lambda l: {1: 2}, 3, 3),
)


def candidate_modules(n, p, e):
    """Candidate modules for SL_n over F_{p^e}, in a deterministic order.

    Returns ModuleSpecs for every restricted family whose l range contains
    n - 1 and whose coefficients are p-restricted, plus, for e >= 2, the
    twisted-tensor candidates with twist exponents 1..e-1.  Duplicate
    weights arising at boundary ranks are emitted once.
    """
    if n < 2:
        raise ValueError("need n >= 2, got %r" % (n,))
    l = n - 1
    specs = []
    seen = set()

    def expand(pattern):
        coeffs = [0] * l
        for i, m in pattern(l).items():
            coeffs[i - 1] += m
        return coeffs

    def push(coeffs):
        w = Weight(coeffs)
        if w.coeffs not in seen:
            seen.add(w.coeffs)
            specs.append(ModuleSpec(l, w, p, e))

    for pattern, lo, hi in _RESTRICTED_FAMILIES:
        if l < lo or (hi is not None and l > hi):
            continue
        coeffs = expand(pattern)
        if max(coeffs) < p:
            push(coeffs)

    if e >= 2:
        for pat1, pat2, lo, hi in _TENSOR_FAMILIES:
            if l < lo or (hi is not None and l > hi):
                continue
            c1, c2 = expand(pat1), expand(pat2)
            if max(c1) >= p or max(c2) >= p:
                continue
            for b in range(1, e):
                push([x + p ** b * y for x, y in zip(c1, c2)])

    specs.sort(key=lambda s: s.weight.coeffs)
    return specs
