"""Upper bounds for numbers of prime-order elements of each automorphism type.

Everything here is a value computation: exact group orders, bounds on the
number of involutions, field / graph automorphisms, semisimple or unipotent
elements missing a given subsystem, and the per-partition centraliser and
fixed-space data used when summing over conjugacy classes.  Bounds are
represented as sums of rational multiples of rational powers of q so that
they can be evaluated exactly and exported.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

# The only symbolic factor in use: the number-of-prime-divisors factor
# log(log2 q + 2) attached to field automorphism bounds.
LOG_FACTOR = "log-prime-divisors"

_ROOT_BITS = 48


def _int_nth_root(m, k):
    """Largest x with x**k <= m, integer arithmetic only."""
    if m < 0:
        raise ValueError("negative radicand")
    if m < 2:
        return m
    x = 1 << ((m.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + m // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _pow_upper(q, exponent):
    """q**exponent as an exact rational upper bound (exact for integers)."""
    e = Fraction(exponent)
    if e < 0:
        raise ValueError("negative exponent in bound")
    if e.denominator == 1:
        return Fraction(q ** e.numerator)
    base = q ** e.numerator
    scale = 1 << _ROOT_BITS
    root = _int_nth_root(base * scale ** e.denominator, e.denominator)
    if root ** e.denominator < base * scale ** e.denominator:
        root += 1
    return Fraction(root, scale)


def log_factor_bound(q):
    """Certified rational upper bound ceil(64*log(log2 q + 2))/64."""
    if q < 2:
        raise ValueError("q must be at least 2")
    with mpmath.workprec(80):
        value = mpmath.log(mpmath.log(q, 2) + 2)
        scaled = int(mpmath.ceil(value * 64 + mpmath.mpf(2) ** -20))
    return Fraction(scaled, 64)


_TAG_RULES = {LOG_FACTOR: log_factor_bound}


def _as_terms(raw):
    terms = []
    for coef, exponent in raw:
        c = Fraction(coef)
        e = Fraction(exponent)
        if c < 0:
            raise ValueError("coefficients must be nonnegative")
        if 6 % e.denominator != 0:
            raise ValueError("exponent denominator must divide 6: %s" % e)
        if c != 0:
            terms.append((c, e))
    merged = {}
    for c, e in terms:
        merged[e] = merged.get(e, Fraction(0)) + c
    return tuple(
        (c, e) for e, c in sorted(merged.items(), key=lambda t: t[0], reverse=True)
    )


@dataclass(frozen=True)
class QExpr:
    """Sum of coef * q**exponent terms, times optional symbolic factors.

    terms is a tuple of (coefficient, exponent) pairs, held sorted by
    descending exponent with equal exponents merged.
    """

    terms: tuple
    tags: tuple = ()
    notes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", _as_terms(self.terms))
        for tag in self.tags:
            if tag not in _TAG_RULES:
                raise ValueError("unknown symbolic factor %r" % tag)

    def evaluate(self, q):
        """Certified upper bound at integer q >= 2, as a Fraction."""
        if q < 2:
            raise ValueError("q must be at least 2")
        total = sum((c * _pow_upper(q, e) for c, e in self.terms), Fraction(0))
        for tag in self.tags:
            total *= _TAG_RULES[tag](q)
        return total

    def max_exponent(self):
        return self.terms[0][1] if self.terms else Fraction(0)

    def scaled(self, factor):
        factor = Fraction(factor)
        return QExpr(
            tuple((factor * c, e) for c, e in self.terms), self.tags, self.notes
        )

    def __add__(self, other):
        if self.tags != other.tags:
            raise ValueError("cannot add bounds with different symbolic factors")
        return QExpr(
            self.terms + other.terms, self.tags, self.notes + other.notes
        )

    def __repr__(self):
        parts = " + ".join("%s*q^%s" % (c, e) for c, e in self.terms) or "0"
        if self.tags:
            parts = "%s * %s" % ("*".join(self.tags), parts)
        return "QExpr(%s)" % parts


def qexpr(*raw_terms, tags=(), notes=()):
    return QExpr(tuple(raw_terms), tuple(tags), tuple(notes))


@dataclass(frozen=True)
class ClassFamily:
    """A family of prime-order classes with a count bound and a fixed-space rule.

    The fixed-space bound is affine in the module dimension d: value is
    fixed_const + fixed_slope * d.  The prefactor names the Prop-style
    multiplier applied to the family's summand.
    """

    label: str
    count: QExpr
    fixed_const: Fraction = Fraction(0)
    fixed_slope: Fraction = Fraction(0)
    prefactor: str = "two"

    def fixed_bound(self, d):
        value = self.fixed_const + self.fixed_slope * d
        if value > d:
            raise ValueError("fixed-space bound exceeds the dimension")
        return value

    def prefactor_value(self, order):
        if self.prefactor == "two":
            return Fraction(2)
        if self.prefactor == "inv-order-minus-one":
            return Fraction(1, order - 1)
        if self.prefactor == "order-over-order-minus-one":
            return Fraction(order, order - 1)
        raise ValueError("unknown prefactor rule %r" % self.prefactor)


@dataclass(frozen=True)
class PartitionDatum:
    """Eigenvalue-multiplicity or Jordan data for one class family."""

    partition: tuple
    eigenspace_bound: int
    codim_bound: int
    class_exponent: int
    distinct_parts: int


def _prime_power(q):
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    for p in range(2, q + 1):
        if p * p > q:
            return q, 1
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError("%d is not a prime power" % q)
            return p, e
    return q, 1


def group_order(kind, n, q):
    """Exact order of GL/SL/PGL/PSL of degree n over F_q."""
    if n < 1:
        raise ValueError("n must be positive")
    _prime_power(q)
    gl = math.prod(q ** n - q ** i for i in range(n))
    if kind == "GL":
        return gl
    if kind == "SL" or kind == "PGL":
        return gl // (q - 1)
    if kind == "PSL":
        return gl // (q - 1) // math.gcd(n, q - 1)
    raise ValueError("unknown kind %r" % kind)


def involution_bounds(n, q):
    """Bounds on the number of elements of order 2 and 3 in Aut(PSL_n(q)).

    2(q^N + q^(N-1)) with N = dim - |roots|/2 for order 2 and
    N = dim - |roots|/3 for order 3, specialised to dim = n^2 - 1 and
    n^2 - n roots.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    _prime_power(q)
    n2 = Fraction(n * n + n, 2) - 1
    n3 = Fraction(2 * n * n + n - 3, 3)
    i2 = qexpr((2, n2), (2, n2 - 1))
    i3 = qexpr((2, n3), (2, n3 - 1))
    return i2, i3


def _sqrt_upper_sixths(d):
    # exact square root when possible, else round up to a sixth
    root = math.isqrt(d)
    if root * root == d:
        return Fraction(root)
    return Fraction(math.isqrt(36 * d) + 1, 6)


def field_auto_term(n, q, k, d, zeta):
    """Bound the contribution of field automorphism classes.

    log(log2 q + 2) * q^(n^2/2 + (k/2)(d + zeta*sqrt(d))), with the log
    carried as a symbolic factor.  zeta = 1 covers the case of an element
    acting linearly on V.  When q is prime there are no field automorphisms
    and the term is marked droppable.
    """
    if zeta not in (0, 1):
        raise ValueError("zeta must be 0 or 1")
    k = Fraction(k)
    if k <= 0 or d < Fraction(n * n) / k:
        raise ValueError("requires d >= n^2/k")
    exponent = Fraction(n * n, 2) + (k / 2) * d
    if zeta:
        exponent += (k / 2) * _sqrt_upper_sixths(d)
    _, e = _prime_power(q)
    notes = ("no-field-automorphisms",) if e == 1 else ()
    return qexpr((1, exponent), tags=(LOG_FACTOR,), notes=notes)


def graph_auto_counts(n, q):
    """Counts of order-2 graph and graph-field automorphisms."""
    if n < 3:
        raise ValueError("graph automorphisms require n >= 3")
    _prime_power(q)
    graph = qexpr((2, Fraction(n * n - n, 2) - 1))
    graph_field = qexpr((1, Fraction(n * n - 1, 2)))
    return graph, graph_field


def _even_geometric(coef, top):
    # coef * (q^top + q^(top-2) + ... ), stepping down by 2 while >= 0
    terms = []
    e = Fraction(top)
    while e >= 0:
        terms.append((coef, e))
        e -= 2
    return qexpr(*terms)


def _double_geometric(coef, top):
    # steps of 2 and 3/2 below the top exponent, every nonnegative combination
    exponents = set()
    top = Fraction(top)
    a = Fraction(0)
    while a <= top:
        b = top - a
        while b >= 0:
            exponents.add(b)
            b -= Fraction(3, 2)
        a += 2
    return qexpr(*((coef, e) for e in sorted(exponents, reverse=True)))


def subsystem_miss_bounds(psi_type, n, q):
    """Table bounds N_s, N_u for elements missing every subsystem of a type.

    N_s bounds prime-order semisimple elements of PGL_n(q) whose root system
    meets every conjugate of the subsystem; N_u bounds prime-order unipotent
    elements whose class closure avoids the subsystem's regular unipotent
    (absent for A1^3).  Geometric-series bounds are stored expanded.
    """
    _prime_power(q)
    if psi_type == "A1^2":
        if n < 2:
            raise ValueError("n too small for A1^2")
        return qexpr((1, 2 * n - 1)), qexpr((1, 2 * n - 1))
    if psi_type == "A1^3":
        if n < 2:
            raise ValueError("n too small for A1^3")
        return qexpr((2, 4 * n - 4)), None
    if psi_type == "A2":
        if n < 3:
            raise ValueError("n too small for A2")
        if n % 2 == 1:
            n_s = qexpr((2, Fraction(n * n + 3, 2)))
        else:
            n_s = qexpr((4, n * n // 2 + 2))
        return n_s, _even_geometric(Fraction(4), Fraction(n * n, 2))
    if psi_type == "A3":
        if n < 4:
            raise ValueError("n too small for A3")
        n_s = qexpr(
            (4, math.floor(Fraction(n * n, 2) + 2)),
            (Fraction(43, 3), Fraction(2 * n * n, 3) + 2),
            (2, Fraction(2 * n * n, 3) + 1),
        )
        return n_s, _double_geometric(Fraction(8), Fraction(2 * n * n, 3))
    raise ValueError("unsupported subsystem type %r" % psi_type)


_ALPHA_TABLE = {
    "generic": None,
    "graph-invol-n4": 6,
    "graphfield-invol-n3": 4,
    "invol-n2": 3,
    "field-invol-n2": 4,
    "diag-invol-n2-q5": 4,
    "psl29-order23": 3,
    "psl29-field-invol": 5,
    "psl42-graph": 7,
}


def alpha_bound(descriptor, n, q):
    """Largest-eigenspace denominator alpha for a class descriptor.

    Eigenspaces of x are bounded by floor(d(1 - 1/alpha(x))); the generic
    value is n, with the handful of exceptional automorphism classes larger.
    """
    if descriptor not in _ALPHA_TABLE:
        raise ValueError("unknown descriptor %r" % descriptor)
    _prime_power(q)
    if descriptor == "generic":
        if n < 2:
            raise ValueError("n must be at least 2")
        return n
    consistent = {
        "graph-invol-n4": n == 4 and q >= 3,
        "graphfield-invol-n3": n == 3,
        "invol-n2": n == 2 and q != 9,
        "field-invol-n2": n == 2 and q != 9,
        "diag-invol-n2-q5": (n, q) == (2, 5),
        "psl29-order23": (n, q) == (2, 9),
        "psl29-field-invol": (n, q) == (2, 9),
        "psl42-graph": (n, q) == (4, 2),
    }
    if not consistent[descriptor]:
        raise ValueError("descriptor %r inconsistent with (n, q) = (%d, %d)" % (descriptor, n, q))
    return _ALPHA_TABLE[descriptor]


def class_count_bound(n, q):
    """Bound q^(n-1) + 5q^(n-2) on the number of conjugacy classes of PGL_n(q)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    _prime_power(q)
    return qexpr((1, n - 1), (5, n - 2))


def rank_count(n, k, q):
    """Exact number of n x n matrices of rank k over F_q."""
    if not 0 <= k <= n:
        raise ValueError("rank out of range")
    _prime_power(q)
    value = Fraction(q ** math.comb(k, 2))
    for i in range(1, k + 1):
        value *= (q ** (n - k + i) - 1) ** 2
        value /= q ** i - 1
    assert value.denominator == 1
    return value.numerator


def _partitions(total, max_part):
    if total == 0:
        yield ()
        return
    for head in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - head, head):
            yield (head,) + rest


_SEMISIMPLE_RULES = ("sym2", "wedge2", "wedge3", "tensor-twist", "adjoint")
_UNIPOTENT_RULES = ("sym2", "wedge2", "tensor-twist", "adjoint")


def _module_dim(rule, n):
    if rule == "sym2":
        return math.comb(n + 1, 2)
    if rule == "wedge2":
        return math.comb(n, 2)
    if rule == "wedge3":
        return math.comb(n, 3)
    # tensor-twist acts on the full n^2 space; for the adjoint quotient up to
    # two dimensions (trace and identity) may be lost, handled by the caller
    return n * n


def partition_class_data(n, mode, rule):
    """Per-partition codim and class-size data for one module rule.

    mode "semisimple" runs over eigenvalue multiplicity partitions of n;
    mode "unipotent-p" over Jordan partitions with parts at most p.  For
    each partition the largest-eigenspace (or fixed-space) bound under the
    chosen module rule is paired with the centraliser-complement exponent
    bounding the class size, and the distinct-part count driving 2^m
    prefactors.
    """
    if n > 40:
        raise ValueError("partition enumeration capped at n = 40")
    adjoint_loss = 2 if rule == "adjoint" else 0
    if mode == "semisimple":
        if rule not in _SEMISIMPLE_RULES:
            raise ValueError("unsupported rule %r for semisimple mode" % rule)
        out = []
        for part in _partitions(n, n):
            sq = sum(a * a for a in part)
            if rule == "sym2":
                eig = math.floor(part[0] + Fraction(sq, 2))
            elif rule == "wedge2":
                eig = math.floor(Fraction(sq, 2))
            elif rule == "wedge3":
                eig = math.floor(Fraction(n * sq, 6))
            else:
                eig = sq
            dim = _module_dim(rule, n) - adjoint_loss
            eig = min(eig, dim)
            out.append(
                PartitionDatum(
                    partition=part,
                    eigenspace_bound=eig,
                    codim_bound=dim - eig,
                    class_exponent=n * n - sq,
                    distinct_parts=len(part),
                )
            )
        return out
    if mode.startswith("unipotent-"):
        p = int(mode.split("-", 1)[1])
        if p < 2:
            raise ValueError("bad characteristic in mode %r" % mode)
        if rule not in _UNIPOTENT_RULES:
            raise ValueError("unsupported rule %r for unipotent mode" % rule)
        out = []
        for part in _partitions(n, min(p, n)):
            if part[0] == 1:
                continue
            mult = {}
            for size in part:
                mult[size] = mult.get(size, 0) + 1
            pairs = sum(
                i * mult[i] * mult[j]
                for i in mult
                for j in mult
                if i < j
            )
            diag = sum(i * a * a for i, a in mult.items())
            if rule == "sym2":
                fixed = (
                    sum(a * math.ceil(i / 2) for i, a in mult.items())
                    + pairs
                    + sum(math.comb(a, 2) * i for i, a in mult.items())
                )
            elif rule == "wedge2":
                fixed = (
                    sum(a * (i // 2) for i, a in mult.items())
                    + pairs
                    + sum(math.comb(a, 2) * i for i, a in mult.items())
                )
            else:
                fixed = diag + 2 * pairs
            dim = _module_dim(rule, n) - adjoint_loss
            fixed = min(fixed, dim)
            out.append(
                PartitionDatum(
                    partition=part,
                    eigenspace_bound=fixed,
                    codim_bound=dim - fixed,
                    class_exponent=n * n - 2 * pairs - diag,
                    distinct_parts=len(mult),
                )
            )
        return out
    raise ValueError("unknown mode %r" % mode)


def bounds_csv(entries):
    """Render (label, QExpr) pairs as CSV rows, one row per term."""
    lines = ["family_label,coefficient,exponent_numerator,exponent_denominator,notes"]
    for label, expr in entries:
        annotations = ";".join(expr.tags + expr.notes)
        for c, e in expr.terms:
            lines.append(
                "%s,%s,%d,%d,%s" % (label, c, e.numerator, e.denominator, annotations)
            )
    return "\n".join(lines) + "\n"
