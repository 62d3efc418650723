"""Assembled counting inequalities and certified regular-orbit verdicts.

A proof that G has a regular orbit on V is a failed counting inequality:
the number of vectors fixed by some prime-order element, summed over class
families with fixed-space bounds, falls short of |V|.  This module builds
such inequalities (from class-family data or as named presets reproducing
the displayed term lists for each module family), evaluates them with
certified rational interval arithmetic, and packages the outcome together
with the base-size bookkeeping that the conclusions feed.

Outcomes are deliberately one-sided: ``RegularOrbitProven`` carries a
certified positive margin, while ``Inconclusive`` never asserts that no
regular orbit exists.  Non-existence statements enter only through the
remainder tables and their recorded provenance.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import mpmath

from .charmod import ModuleSpec, irreducible_character, module_dimension
from .counts import (
    LOG_FACTOR,
    _int_nth_root,
    _sqrt_upper_sixths,
    field_auto_term,
    group_order,
    involution_bounds,
    partition_class_data,
    qexpr,
    subsystem_miss_bounds,
)
from .nets import contribution_table
from .rootsys import Subsystem

PROVEN = "RegularOrbitProven"
INCONCLUSIVE = "Inconclusive"
VARIANTS = ("eigsp1", "eigsp2", "qsgood", "crude")

# Flags that forbid a proven outcome even when the intervals separate.
FATAL_FLAGS = ("indeterminate",)
# Flags that mark a verdict inherited through a lemma rather than evaluated.
INHERITED_FLAGS = ("monotone-d", "field-extension", "cited", "vacuous-hypothesis")

DEFAULT_BITS = 64
MAX_BITS = 4096


# --- certified enclosures -------------------------------------------------

def _power_bounds(q, exponent, bits):
    """Enclosure [lo, hi] of q**exponent with hi - lo <= 2^-bits."""
    e = Fraction(exponent)
    if e < 0:
        raise ValueError("negative exponent in bound")
    if e.denominator == 1:
        v = Fraction(q ** e.numerator)
        return v, v
    shifted = q ** e.numerator << (e.denominator * bits)
    root = _int_nth_root(shifted, e.denominator)
    scale = 1 << bits
    if root ** e.denominator == shifted:
        v = Fraction(root, scale)
        return v, v
    return Fraction(root, scale), Fraction(root + 1, scale)


def _log_factor_bounds(q, bits):
    """Enclosure of log(log2 q + 2); padded one unit beyond the work precision."""
    scale = 1 << bits
    with mpmath.workprec(bits + 48):
        value = mpmath.log(mpmath.log(q, 2) + 2)
        mid = int(mpmath.floor(value * scale))
    lo = Fraction(max(mid - 1, 0), scale)
    hi = Fraction(mid + 2, scale)
    return lo, hi


def _qexpr_bounds(expr, q, bits):
    lo = Fraction(0)
    hi = Fraction(0)
    for coef, exponent in expr.terms:
        plo, phi = _power_bounds(q, exponent, bits)
        lo += coef * plo
        hi += coef * phi
    for tag in expr.tags:
        if tag == LOG_FACTOR:
            flo, fhi = _log_factor_bounds(q, bits)
            lo *= flo
            hi *= fhi
        else:
            raise ValueError("unknown symbolic factor %r" % tag)
    return lo, hi


# --- instance model -------------------------------------------------------

@dataclass(frozen=True)
class Term:
    """One right-hand summand: a class-count expression times fixed-space powers.

    ``fix_exponents`` are absolute exponents of q; the term's value is
    count(q) * sum(q**f for f in fix_exponents), so a displayed factor like
    (q^a + q^b) becomes two fix exponents on one term.
    """

    label: str
    count: object
    fix_exponents: tuple

    def __post_init__(self):
        fixes = tuple(Fraction(f) for f in self.fix_exponents)
        if not fixes:
            raise ValueError("a term needs at least one fixed-space exponent")
        for f in fixes:
            if f < 0:
                raise ValueError("fixed-space exponent must be nonnegative")
        object.__setattr__(self, "fix_exponents", fixes)

    def bounds(self, q, bits):
        clo, chi = _qexpr_bounds(self.count, q, bits)
        flo = Fraction(0)
        fhi = Fraction(0)
        for f in self.fix_exponents:
            plo, phi = _power_bounds(q, f, bits)
            flo += plo
            fhi += phi
        return clo * flo, chi * fhi


def term(label, count, *fix_exponents):
    return Term(label, count, tuple(fix_exponents))


@dataclass(frozen=True)
class InequalityInstance:
    """|V| versus a sum of class-family terms, with LHS = q^(k*d)."""

    module: str
    d: Fraction
    k: Fraction
    terms: tuple
    variant: str
    flags: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "d", Fraction(self.d))
        object.__setattr__(self, "k", Fraction(self.k))
        object.__setattr__(self, "flags", tuple(sorted(set(self.flags))))
        if self.d <= 0 or self.k <= 0:
            raise ValueError("dimension and field exponent must be positive")
        if self.variant not in VARIANTS:
            raise ValueError("unknown variant %r" % self.variant)
        if not self.terms:
            raise ValueError("instance needs at least one term")
        lhs = self.lhs_exponent
        for t in self.terms:
            if max(t.fix_exponents) > lhs:
                raise ValueError(
                    "fixed-space exponent exceeds the space in term %r" % t.label
                )

    @property
    def lhs_exponent(self):
        return self.k * self.d


@dataclass(frozen=True)
class Verdict:
    """Outcome of one certified comparison (or an inherited conclusion)."""

    outcome: str
    margin: object
    dominating: tuple
    flags: tuple
    variant: str
    precision_bits: int

    def __post_init__(self):
        object.__setattr__(self, "flags", tuple(sorted(set(self.flags))))
        if self.outcome not in (PROVEN, INCONCLUSIVE):
            raise ValueError("unknown outcome %r" % self.outcome)
        if self.outcome == PROVEN:
            if any(f.split(":")[0] in FATAL_FLAGS for f in self.flags):
                raise ValueError("a fatal flag forbids a proven outcome")
            inherited = any(
                f.split(":")[0] in INHERITED_FLAGS for f in self.flags
            )
            if self.margin is None and not inherited:
                raise ValueError("a computed proof needs a positive margin")
            if self.margin is not None and self.margin <= 0:
                raise ValueError("margin must be positive when present")


def evaluate(instance, q, *, start_bits=DEFAULT_BITS, max_bits=MAX_BITS):
    """Certified comparison of q^(kd) against the instance's term sum.

    Both sides are enclosed in rational intervals; the precision doubles
    until the intervals separate or the bit cap is reached.  Rounding only
    ever enlarges the right side, so a proven outcome cannot flip when the
    evaluation is repeated at higher precision.
    """
    if not isinstance(q, int) or q < 2:
        raise ValueError("q must be an integer >= 2")
    bits = start_bits
    flags = list(instance.flags)
    while True:
        lhs_lo, lhs_hi = _power_bounds(q, instance.lhs_exponent, bits)
        rhs_lo = Fraction(0)
        rhs_hi = Fraction(0)
        uppers = []
        for t in instance.terms:
            tlo, thi = t.bounds(q, bits)
            rhs_lo += tlo
            rhs_hi += thi
            uppers.append((thi, t.label))
        if lhs_lo > rhs_hi:
            fatal = any(f.split(":")[0] in FATAL_FLAGS for f in flags)
            outcome = INCONCLUSIVE if fatal else PROVEN
            margin = None if fatal else lhs_lo - rhs_hi
            break
        if lhs_hi <= rhs_lo:
            outcome = INCONCLUSIVE
            margin = None
            break
        if bits >= max_bits:
            outcome = INCONCLUSIVE
            margin = None
            flags.append("precision-cap")
            break
        bits *= 2
    ranked = sorted(uppers, key=lambda pair: (-pair[0], pair[1]))
    dominating = tuple(
        (label, margin_exponent(value, q)) for value, label in ranked[:3] if value > 0
    )
    return Verdict(
        outcome=outcome,
        margin=margin,
        dominating=dominating,
        flags=tuple(flags),
        variant=instance.variant,
        precision_bits=bits,
    )


def margin_exponent(value, q):
    """Largest integer t with q^t <= value; None for nonpositive values."""
    if value is None or value <= 0:
        return None
    value = Fraction(value)
    t = 0
    if value >= 1:
        while Fraction(q) ** (t + 1) <= value:
            t += 1
    else:
        while Fraction(q) ** t > value:
            t -= 1
    return t


# --- elementary operations ------------------------------------------------

def alpha_eigenspace_bound(d, alpha):
    """floor(d * (1 - 1/alpha)): the largest eigenspace allowed by alpha."""
    if d < 1:
        raise ValueError("dimension must be positive")
    alpha = Fraction(alpha)
    if alpha < 2:
        raise ValueError("alpha must be at least 2")
    return math.floor(Fraction(d) * (1 - 1 / alpha))


def build_inequality(spec, families, variant, *, alphas=None, order=2):
    """Assemble an instance from class families under one proposition variant.

    eigsp1 folds the sum over the order-1 scalar twists of each class into a
    unit prefactor and so accepts only families carrying the 1/(o-1) rule;
    eigsp2 and qsgood multiply by o/(o-1) (resp. 2) off characteristic and
    1/(o-1) in it; crude keeps the qsgood prefactors but replaces every
    fixed-space bound by the alpha-eigenspace bound.
    """
    if variant not in VARIANTS:
        raise ValueError("unknown variant %r" % variant)
    if order < 2:
        raise ValueError("order must be at least 2")
    families = tuple(families)
    if not families:
        raise ValueError("at least one class family is required")
    d = module_dimension(spec)
    terms = []
    for fam in families:
        if variant == "eigsp1":
            if fam.prefactor != "inv-order-minus-one":
                raise ValueError(
                    "eigsp1 requires the 1/(order-1) rule on %r" % fam.label
                )
            scale = Fraction(1)
        elif variant == "eigsp2":
            if fam.prefactor == "two":
                raise ValueError(
                    "eigsp2 uses order-ratio prefactors, not %r" % fam.label
                )
            scale = fam.prefactor_value(order)
        else:
            if fam.prefactor == "inv-order-minus-one":
                scale = fam.prefactor_value(order)
            else:
                scale = Fraction(2)
        if variant == "crude":
            alpha = None
            if alphas is not None:
                alpha = alphas.get(fam.label)
            if alpha is None:
                alpha = spec.n
            fix = alpha_eigenspace_bound(d, alpha)
        else:
            fix = fam.fixed_bound(d)
        terms.append(term(fam.label, fam.count.scaled(scale), spec.k * Fraction(fix)))
    name = "hw%s-l%d-q%d" % (
        ",".join(str(c) for c in spec.weight.coeffs),
        spec.l,
        spec.q,
    )
    return InequalityInstance(
        module=name, d=d, k=spec.k, terms=tuple(terms), variant=variant
    )


def monotone_in_d(instance, q, d_new):
    """Transfer a crude proof upward in the dimension.

    Every crude term exponent grows by at most one when d does, while the
    left side grows by exactly q, so a failed inequality stays failed for
    all larger dimensions; the verdict is inherited without re-evaluation.
    """
    if instance.variant != "crude":
        raise ValueError("dimension monotonicity holds for the crude variant only")
    if d_new < instance.d:
        raise ValueError("monotonicity only extends to larger dimensions")
    base = evaluate(instance, q)
    if base.outcome != PROVEN or d_new == instance.d:
        return base
    return Verdict(
        outcome=PROVEN,
        margin=None,
        dominating=base.dominating,
        flags=base.flags + ("monotone-d",),
        variant=base.variant,
        precision_bits=base.precision_bits,
    )


def extend_field_verdict(base, k):
    """Lift a proven verdict to the same module read over F_{q^k}.

    A vector in a regular orbit stays in one when the scalars are extended
    and the extension's multiplicative group is adjoined, so the proof
    transfers; an inconclusive base supports no such transfer.
    """
    if k < 1:
        raise ValueError("extension degree must be at least 1")
    if base.outcome != PROVEN:
        raise ValueError("field extension needs a proven base verdict")
    return Verdict(
        outcome=PROVEN,
        margin=None,
        dominating=base.dominating,
        flags=base.flags + ("field-extension",),
        variant=base.variant,
        precision_bits=base.precision_bits,
    )


def tensor_emax_bound(d1, e1, d2, e2):
    """Largest eigenspace of x (tensor) y from the factors' eigenspace bounds."""
    for d, e in ((d1, e1), (d2, e2)):
        if not 1 <= e <= d:
            raise ValueError("eigenspace bound must lie in [1, d]")
    return min(d2 * e1, d1 * e2)


# --- base size bookkeeping ------------------------------------------------

@dataclass(frozen=True)
class BaseSizeBound:
    """Certified range for b(G) with the provenance of each side."""

    lower: int
    upper: int
    provenance: tuple

    def __post_init__(self):
        if not 1 <= self.lower <= self.upper:
            raise ValueError("need 1 <= lower <= upper")
        if self.upper == 1 and not any(
            p.startswith("regular-orbit") for p in self.provenance
        ):
            raise ValueError("upper bound 1 requires a proven regular orbit")


def order_lower_bound(order, q, d, k=1):
    """ceil(log |G| / log |V|): tuples shorter than this cannot be bases."""
    if order < 1:
        raise ValueError("group order must be positive")
    exponent = Fraction(k) * Fraction(d)
    if exponent <= 0:
        raise ValueError("the space must have positive dimension")
    b = 1
    while Fraction(q) ** (exponent * b) < order:
        b += 1
        if b > 512:
            raise ValueError("runaway lower bound; check the inputs")
    return b


def base_size_descent(bound, i):
    """Turn a base over F_{q^i} into one over F_q by writing out coordinates."""
    if i < 1:
        raise ValueError("descent degree must be at least 1")
    return BaseSizeBound(
        lower=1,
        upper=bound.upper * i,
        provenance=bound.provenance + ("descent:x%d" % i,),
    )


def automorphism_order_bound(n, q, e):
    """|PGL_n(q)| times the diagonal-free outer part (field and graph)."""
    outer = e * (2 if n >= 3 else 1)
    return group_order("PGL", n, q) * outer


def volume_deficit(n, q, e, d, k=1):
    """True when |V| < |Aut| so no regular orbit is possible on sheer size."""
    exponent = Fraction(k) * Fraction(d)
    return Fraction(q) ** exponent < automorphism_order_bound(n, q, e)


# --- shared builders ------------------------------------------------------

def _prime_split(q):
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError("%d is not a prime power" % q)
            return p, e
    raise ValueError("q must be at least 2")


def _pgl_term(label, n, q, fix, coef=2):
    return term(label, qexpr((coef * group_order("PGL", n, q), 0)), fix)


def _log_term(n, q, d, *, coef=2, zeta=0, k=1):
    return term("field-log", field_auto_term(n, q, k, d, zeta).scaled(coef), 0)


def _net_minimum(spec, indices, *, which="all"):
    """Smallest usable codimension total over one subsystem's net table.

    which selects the columns: "semisimple" (all semisimple element orders),
    "unipotent" (characteristic order only), or "all".
    """
    char = irreducible_character(spec)
    report = contribution_table(
        char,
        Subsystem(spec.l, indices),
        primes_r=(2, 3),
        primes_p=(spec.p,),
    )
    values = []
    if which in ("all", "semisimple"):
        values += [v for v in report.semisimple_totals if v is not None]
    if which in ("all", "unipotent"):
        values += [v for v in report.unipotent_totals if v is not None]
    if not values:
        raise ValueError("no usable column for subsystem %s" % (indices,))
    return min(values), report.flags


# --- preset catalog -------------------------------------------------------
#
# Each builder returns a list of InequalityInstance attempts (tried in
# order; the first proven one wins) or a Verdict for conclusions that rest
# on an encoded fact rather than an evaluation.  Counts mirror the module
# family's term list; tightened fallbacks are flagged.

_ALTERNATING_ISO = {(2, 9), (4, 2)}


def _fact_verdict(flag, variant="crude"):
    return Verdict(
        outcome=PROVEN,
        margin=None,
        dominating=(),
        flags=(flag,),
        variant=variant,
        precision_bits=0,
    )


def _screen(n, q, d=None, graph=True):
    """d >= n^3 screen: every large enough module admits a regular orbit."""
    if n < 2:
        raise ValueError("n must be at least 2")
    p, e = _prime_split(q)
    if (n, q) in ((2, 4), (2, 5)):
        raise ValueError("the layer is alternating for (n, q) = (%d, %d)" % (n, q))
    if d is None:
        d = n ** 3
    if d < n ** 3:
        raise ValueError("the screen needs d >= n^3")
    if (n, q) in _ALTERNATING_ISO:
        return _fact_verdict("cited")
    # The Steinberg module is the largest irreducible one; below the screen
    # dimension the hypothesis is empty.
    if Fraction(q) ** Fraction(n * (n - 1), 2) < d:
        return _fact_verdict("vacuous-hypothesis")
    big = alpha_eigenspace_bound(d, n)
    small = -((-d) // n)
    log_part = _log_term(n, q, d)
    if n >= 5 or not graph:
        prefix = qexpr(
            (group_order("PGL", n, q), 0),
            (1, Fraction(n * n + n, 2) - 1),
            (1, Fraction(n * n - 1, 2)),
        )
        terms = [term("inner-and-outer", prefix, big, small), log_part]
    elif n == 4:
        if q == 2:
            return _fact_verdict("cited")
        prefix = qexpr((group_order("PGL", 4, q), 0), (1, 10))
        terms = [
            term("inner-and-graph", prefix, alpha_eigenspace_bound(d, 4), -((-d) // 4)),
            term("graph-field", qexpr((2, 9)), alpha_eigenspace_bound(d, 6), -((-d) // 6)),
            log_part,
        ]
    elif n == 3:
        prefix = qexpr((group_order("PGL", 3, q), 0))
        terms = [
            term("inner", prefix, alpha_eigenspace_bound(d, 3), -((-d) // 3)),
            term("graph", qexpr((2, 5), (2, 4)), alpha_eigenspace_bound(d, 4), -((-d) // 4)),
            log_part,
        ]
    else:
        if q < 7 or q == 9:
            raise ValueError("the n = 2 screen requires q >= 7, q != 9")
        terms = [
            term("odd-order", qexpr((4, 2), (4, 1)), alpha_eigenspace_bound(d, 3), -((-d) // 3)),
            _pgl_term("involutions", 2, q, d // 2),
            term(
                "field-involutions",
                qexpr((1, Fraction(3, 2)), (1, Fraction(1, 2))),
                alpha_eigenspace_bound(d, 4),
            ),
            log_part,
        ]
        if e == 1:
            # A prime field carries no field automorphisms; the two terms
            # that count them are dropped.
            terms = terms[:2]
    flags = ("no-field-automorphisms",) if (n == 2 and e == 1) else ()
    return [
        InequalityInstance(
            module="n3-screen", d=d, k=1, terms=tuple(terms), variant="crude",
            flags=flags,
        )
    ]


def _worked_example(l, q):
    """lambda_1 + lambda_{l-1}: the two-orbit module with the A2-net route."""
    if l < 4:
        raise ValueError("the preset needs l >= 4")
    p, e = _prime_split(q)
    n = l + 1
    weight = [0] * l
    weight[0] += 1
    weight[l - 2] += 1
    spec = ModuleSpec(l, tuple(weight), p, e)
    d = module_dimension(spec)
    el = 1 if l % p == 0 else 0
    e2 = 1 if p == 2 else 0
    c_net = 3 * l * l - 5 * l + 2 - 2 * el * (1 + e2)
    c_string = 3 * math.comb(l, 2) - el
    c_string_weak = c_string - (l - 1)
    n_s_even = qexpr((8, Fraction(n * n, 2) + 2))
    n_u = subsystem_miss_bounds("A2", n, q)[1]
    attempts = [
        InequalityInstance(
            module="l1+l_{n-1}",
            d=d,
            k=1,
            terms=(
                _pgl_term("prime-order", n, q, d - c_net),
                term("pair-eigenvalue-miss", n_s_even + n_u, d - c_string),
                term("transvection-miss", qexpr((2, 2 * n - 1)), d - c_string_weak),
                _log_term(n, q, d),
            ),
            variant="qsgood",
        )
    ]
    if q == 2 and n % 2 == 1:
        # Over F_2 with n odd no prime-order semisimple class has only two
        # eigenvalues (a rational Galois orbit of size one is trivial and a
        # two-element orbit forces equal multiplicities), and prime-order
        # unipotent elements are products of j commuting transvections, so
        # the lossy merged term splits into exact pieces.
        c_s, flags_s = _net_minimum(spec, (1, 2), which="semisimple")
        pieces = [
            _pgl_term("odd-semisimple", n, q, d - c_s),
        ]
        flags = set(flags_s)
        for j in range(1, n // 2 + 1):
            indices = tuple(2 * i + 1 for i in range(j))
            c_j, flags_j = _net_minimum(spec, indices, which="unipotent")
            flags |= set(flags_j)
            if j == 1:
                count = qexpr((2, 2 * n - 1))
            else:
                count = qexpr((4, 2 * j * (n - j)))
            pieces.append(term("transvections-x%d" % j, count, d - c_j))
        attempts.append(
            InequalityInstance(
                module="l1+l_{n-1}",
                d=d,
                k=1,
                terms=tuple(pieces),
                variant="qsgood",
                flags=tuple(flags) + ("refined-small-field",),
            )
        )
    return attempts


def _four_l1(l, q):
    """4*lambda_1, p >= 5."""
    if l < 1:
        raise ValueError("the preset needs l >= 1")
    p, e = _prime_split(q)
    if p < 5:
        raise ValueError("the fourth symmetric power needs p >= 5")
    n = l + 1
    weight = [0] * l
    weight[0] = 4
    spec = ModuleSpec(l, tuple(weight), p, e)
    d = module_dimension(spec)
    i2, _ = involution_bounds(n, q)
    flags = ("needs-exact-counts",) if l == 1 else ()
    return [
        InequalityInstance(
            module="4l1",
            d=d,
            k=1,
            terms=(
                _pgl_term(
                    "prime-order",
                    n,
                    q,
                    d - math.comb(l + 2, 3) - math.comb(l + 1, 2) - 2 * l,
                ),
                term(
                    "involutions",
                    i2.scaled(2),
                    d - math.comb(l, 3) - 2 * math.comb(l + 1, 2),
                ),
                _log_term(n, q, d),
            ),
            variant="qsgood",
            flags=flags,
        )
    ]


def _l5(l, q):
    """lambda_5: the fifth exterior power."""
    if l < 9:
        raise ValueError("the preset needs l >= 9")
    p, e = _prime_split(q)
    n = l + 1
    weight = [0] * l
    weight[4] = 1
    spec = ModuleSpec(l, tuple(weight), p, e)
    d = module_dimension(spec)
    if l >= 10:
        terms = (
            _pgl_term("prime-order", n, q, d - math.comb(l - 1, 4)),
            _log_term(n, q, d),
        )
    else:
        terms = (
            _pgl_term("prime-order", n, q, 152),
            term("pair-eigenvalue-miss", qexpr((4, 19)), d - 70),
            _log_term(n, q, d),
            term(
                "graph",
                qexpr((4, 54), (4, Fraction(99, 2))),
                142,
            ),
        )
    return [
        InequalityInstance(module="l5", d=d, k=1, terms=terms, variant="qsgood")
    ]


def _l4(l, q):
    """lambda_4: the fourth exterior power."""
    if l < 7:
        raise ValueError("the preset needs l >= 7")
    p, e = _prime_split(q)
    n = l + 1
    weight = [0] * l
    weight[3] = 1
    spec = ModuleSpec(l, tuple(weight), p, e)
    d = module_dimension(spec)
    if l == 7:
        return _fact_verdict("cited")
    n_s3 = subsystem_miss_bounds("A3", n, q)[0]
    i2, _ = involution_bounds(n, q)
    if l >= 9:
        c = 2 * (math.comb(l - 2, 3) + l - 3)
        terms = (
            _pgl_term("prime-order", n, q, d - 2 * math.comb(l - 1, 3)),
            term(
                "triple-eigenvalue-miss",
                qexpr((8, Fraction(n * n, 2) + 2)),
                d - c,
            ),
            term("pair-eigenvalue-miss", qexpr((4, 2 * n - 1)), d - math.comb(n - 2, 3)),
            term("involutions", i2.scaled(2), d - c),
            _log_term(n, q, d),
        )
    else:
        terms = (
            _pgl_term("prime-order", n, q, 41),
            term("triple-eigenvalue-miss", n_s3.scaled(2), d - 70),
            term("quadruple-eigenvalue-miss", qexpr((4, 42)), d - 50),
            term("pair-eigenvalue-miss", qexpr((4, 2 * n - 1)), d - 35),
            term("involutions", i2.scaled(2), d - 50),
            _log_term(n, q, d),
        )
    return [
        InequalityInstance(module="l4", d=d, k=1, terms=terms, variant="qsgood")
    ]


def _two_l2(l, q):
    """2*lambda_2, p >= 3."""
    if l < 3:
        raise ValueError("the preset needs l >= 3")
    p, e = _prime_split(q)
    if p < 3:
        raise ValueError("the module requires odd characteristic")
    n = l + 1
    weight = [0] * l
    weight[1] = 2
    spec = ModuleSpec(l, tuple(weight), p, e)
    d = module_dimension(spec)
    e3 = 1 if p == 3 else 0
    i2, _ = involution_bounds(n, q)
    if l >= 5:
        terms = (
            _pgl_term(
                "prime-order",
                n,
                q,
                d - (2 * math.comb(l + 1, 3) + l - 1 - e3 * math.comb(l - 1, 3)),
            ),
            term(
                "involutions",
                i2.scaled(2),
                d - (2 * math.comb(l + 1, 3) - e3 * math.comb(l, 3)),
            ),
            _log_term(n, q, d),
        )
    elif l == 4:
        terms = (
            _pgl_term("prime-order", n, q, d - 28 + 2 * e3),
            term("involutions", i2.scaled(2), d - 22 + 2 * e3),
            term("pair-eigenvalue-miss", qexpr((3, 9)), d - 20 + 4 * e3),
            _log_term(n, q, d),
        )
    else:
        return Verdict(
            outcome=INCONCLUSIVE,
            margin=None,
            dominating=(),
            flags=("cited",),
            variant="qsgood",
            precision_bits=0,
        )
    return [
        InequalityInstance(module="2l2", d=d, k=1, terms=terms, variant="qsgood")
    ]


# Unipotent Jordan shapes (non-unit parts) whose class exponent can fall
# below 6n; everything else is absorbed into the generic extension bound.
_SMALL_UNIPOTENT_SHAPES = frozenset(
    {
        (6,), (5, 2), (5,), (4, 3), (4, 2, 2), (4, 2), (4,),
        (3, 3, 2), (3, 3), (3, 2, 2, 2), (3, 2, 2), (3, 2), (3,),
        (2, 2, 2, 2, 2), (2, 2, 2, 2), (2, 2, 2), (2, 2), (2,),
    }
)


def _ext_l2(n, q, k):
    """The exterior square read over an extension field F_{q^k}, k >= 3."""
    if n < 4:
        raise ValueError("the preset needs n >= 4")
    if k < 3:
        raise ValueError("degrees below 3 are handled by the extension lemma")
    p, e = _prime_split(q)
    d = Fraction(k) * math.comb(n, 2)
    class_bound = qexpr((2, n - 1), (10, n - 2))
    sqrt_n = _sqrt_upper_sixths(n)
    generic_fix = (
        d - (Fraction(k, 2) - 1) * (3 * n - 6),
        d - ((Fraction(5 * k, 2) - 6) * n - sqrt_n),
    )
    terms = [
        term("generic-classes", class_bound, *generic_fix),
        _log_term(n, q, int(d)),
        term("near-scalar", qexpr((2, 2 * n - 1)), d - k * (n - 2)),
        term("two-block", qexpr((2, 4 * n - 7)), d - 2 * k * (n - 2)),
    ]
    for datum in partition_class_data(n, "unipotent-%d" % p, "wedge2"):
        shape = tuple(part for part in datum.partition if part > 1)
        if shape not in _SMALL_UNIPOTENT_SHAPES:
            continue
        terms.append(
            term(
                "unipotent-" + ".".join(str(part) for part in datum.partition),
                qexpr((2 ** datum.distinct_parts, datum.class_exponent)),
                d - k * datum.codim_bound,
            )
        )
    return [
        InequalityInstance(
            module="ext-L2", d=d, k=1, terms=tuple(terms), variant="qsgood"
        )
    ]


def _crude_default(module, weight_builder):
    def build(n=None, l=None, q=None):
        if l is None:
            if n is None:
                raise ValueError("give the rank")
            l = n - 1
        if q is None:
            raise ValueError("give q")
        p, e = _prime_split(q)
        weight = weight_builder(l)
        spec = ModuleSpec(l, weight, p, e)
        d = module_dimension(spec)
        return [
            InequalityInstance(
                module=module,
                d=d,
                k=1,
                terms=(
                    _pgl_term(
                        "generic", l + 1, q, alpha_eigenspace_bound(d, l + 1)
                    ),
                ),
                variant="crude",
            )
        ]

    return build


def _weight_l1(l):
    return (1,) + (0,) * (l - 1)


def _weight_l2(l):
    if l < 2:
        raise ValueError("lambda_2 needs rank >= 2")
    w = [0] * l
    w[1] = 1
    return tuple(w)


def _weight_2l1(l):
    return (2,) + (0,) * (l - 1)


def _weight_adjoint(l):
    if l < 2:
        raise ValueError("the adjoint pair needs rank >= 2")
    w = [0] * l
    w[0] = 1
    w[l - 1] += 1
    return tuple(w)


def _l1_l3(l, q):
    """lambda_1 + lambda_3 for l in [5, 11]."""
    if not 5 <= l <= 11:
        raise ValueError("the preset covers l in [5, 11]")
    p, e = _prime_split(q)
    n = l + 1
    e2 = 1 if p == 2 else 0
    w = [0] * l
    w[0] = 1
    w[2] = 1
    spec = ModuleSpec(l, tuple(w), p, e)
    d = module_dimension(spec)
    i2, _ = involution_bounds(n, q)
    terms = (
        _pgl_term(
            "prime-order",
            n,
            q,
            d - (l * (l - 1) ** 2 // 2 - e2 * math.comb(l - 1, 3)),
        ),
        term(
            "involutions",
            i2.scaled(2),
            d - math.comb(l + 1, 3) - math.comb(l, 3),
        ),
        _log_term(n, q, d),
    )
    return [
        InequalityInstance(module="l1+l3", d=d, k=1, terms=terms, variant="qsgood")
    ]


def _l2_l3(l, q):
    """lambda_2 + lambda_3 for l in [4, 7]."""
    if not 4 <= l <= 7:
        raise ValueError("the preset covers l in [4, 7]")
    p, e = _prime_split(q)
    n = l + 1
    e2 = 1 if p == 2 else 0
    e3 = 1 if p == 3 else 0
    w = [0] * l
    w[1] = 1
    w[2] = 1
    spec = ModuleSpec(l, tuple(w), p, e)
    d = module_dimension(spec)
    i2, _ = involution_bounds(n, q)
    if l == 4:
        terms = (
            _pgl_term("prime-order", n, q, d - 34 + 8 * e3),
            term("involutions", i2.scaled(2), d - 34 + 15 * e3),
            _log_term(n, q, d),
            term(
                "graph",
                qexpr((4, 12), (4, 14)),
                46 - 16 * e3 - e2,
            ),
        )
    elif l == 5:
        terms = (
            _pgl_term("prime-order", n, q, d - 59),
            _log_term(n, q, d),
        )
    else:
        c_min, net_flags = _net_minimum(spec, (1,))
        terms = (
            _pgl_term("prime-order", n, q, d - c_min),
            _log_term(n, q, d),
        )
        return [
            InequalityInstance(
                module="l2+l3",
                d=d,
                k=1,
                terms=terms,
                variant="qsgood",
                flags=tuple(net_flags),
            )
        ]
    return [
        InequalityInstance(module="l2+l3", d=d, k=1, terms=terms, variant="qsgood")
    ]


def _l2_l4(q, l=5):
    """lambda_2 + lambda_4 at l = 5."""
    if l != 5:
        raise ValueError("the preset is specific to l = 5")
    p, e = _prime_split(q)
    spec = ModuleSpec(5, (0, 1, 0, 1, 0), p, e)
    d = module_dimension(spec)
    e2 = 1 if p == 2 else 0
    e5 = 1 if p == 5 else 0
    terms = (
        _pgl_term("prime-order", 6, q, d - 54),
        _log_term(6, q, d),
        term(
            "graph",
            qexpr((2, 20), (2, Fraction(35, 2))),
            114 - 23 * e2 - e5,
        ),
    )
    return [
        InequalityInstance(module="l2+l4", d=d, k=1, terms=terms, variant="qsgood")
    ]


def _three_l1_l2(l, q):
    """3*lambda_1 + lambda_2 for l in [2, 4], p >= 5."""
    if not 2 <= l <= 4:
        raise ValueError("the preset covers l in [2, 4]")
    p, e = _prime_split(q)
    if p < 5:
        raise ValueError("the module requires p >= 5")
    n = l + 1
    w = [0] * l
    w[0] = 3
    w[1] += 1
    spec = ModuleSpec(l, tuple(w), p, e)
    d = module_dimension(spec)
    e5 = 1 if p == 5 else 0
    i2, i3 = involution_bounds(n, q)
    if l == 2:
        terms = (
            _pgl_term("prime-order", n, q, d - 13),
            term("involutions", i2.scaled(2), d - (12 - 4 * e5)),
            term("order-three", i3, d - (14 - 4 * e5)),
            _log_term(n, q, d),
        )
    else:
        c_min, net_flags = _net_minimum(spec, (1,))
        terms = (
            _pgl_term("prime-order", n, q, d - c_min),
            _log_term(n, q, d),
        )
        return [
            InequalityInstance(
                module="3l1+l2",
                d=d,
                k=1,
                terms=terms,
                variant="qsgood",
                flags=tuple(net_flags),
            )
        ]
    return [
        InequalityInstance(module="3l1+l2", d=d, k=1, terms=terms, variant="qsgood")
    ]


def _l1_l2_l3(q, l=3):
    """lambda_1 + lambda_2 + lambda_3 at l = 3."""
    if l != 3:
        raise ValueError("the preset is specific to l = 3")
    p, e = _prime_split(q)
    spec = ModuleSpec(3, (1, 1, 1), p, e)
    d = module_dimension(spec)
    e3 = 1 if p == 3 else 0
    e5 = 1 if p == 5 else 0
    terms = (
        _pgl_term("prime-order", 4, q, d - 32 + 12 * e3 + 4 * e5),
        _log_term(4, q, d),
        term(
            "graph",
            qexpr((2, Fraction(15, 2)), (2, 9)),
            44 - 5 * e5 - 14 * e3,
        ),
    )
    return [
        InequalityInstance(module="l1+l2+l3", d=d, k=1, terms=terms, variant="qsgood")
    ]


def _two_l1_ll(l, q):
    """2*lambda_1 + lambda_l for l >= 2."""
    if l < 2:
        raise ValueError("the preset needs l >= 2")
    p, e = _prime_split(q)
    n = l + 1
    w = [0] * l
    w[0] = 2
    w[l - 1] += 1
    spec = ModuleSpec(l, tuple(w), p, e)
    d = module_dimension(spec)
    xi = 1 if (l + 2) % p == 0 else 0
    i2, _ = involution_bounds(n, q)
    terms = (
        _pgl_term(
            "prime-order", n, q, d - Fraction(3 * l * l + 3 * l - 2 * xi, 2)
        ),
        term(
            "involutions",
            i2.scaled(2),
            d - Fraction(3 * l * l + l - 2 * xi, 2),
        ),
        term(
            "semisimple-pairs",
            qexpr((1, n * (n - 1))),
            d - Fraction(3 * l * l + l - 2 * xi - 2, 2),
        ),
        _log_term(n, q, d),
    )
    # At l = 2 the semisimple-pair term alone reaches q^d, so the route
    # cannot close; tighter counts are needed there, as for q = 2.
    settled = l >= 3 and q >= 3
    flags = () if settled else ("needs-exact-counts",)
    return [
        InequalityInstance(
            module="2l1+l_l", d=d, k=1, terms=terms, variant="qsgood", flags=flags
        )
    ]


def _partition_count(n, max_part):
    table = [1] + [0] * n
    for part in range(1, max_part + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]


def _l3(l, q):
    """lambda_3: the third exterior power, l >= 5."""
    if l < 5:
        raise ValueError("the preset needs l >= 5")
    p, e = _prime_split(q)
    n = l + 1
    w = [0] * l
    w[2] = 1
    spec = ModuleSpec(l, tuple(w), p, e)
    d = module_dimension(spec)
    if n in (9, 10):
        return _fact_verdict("cited")
    if n < 9:
        raise ValueError("small ranks are settled by the extension route")
    if n >= 15:
        # The class-spread route; its premise holds for all n >= 7 but the
        # numbers only close from n = 16 up, so n = 15 stays inconclusive.
        n_u3 = subsystem_miss_bounds("A3", n, q)[1]
        n_u2 = subsystem_miss_bounds("A2", n, q)[1]
        terms = (
            term(
                "class-spread",
                qexpr((2, n - 1), (10, n - 2)),
                d - Fraction(5 * n * n - 84 * n + 192, 6),
            ),
            term(
                "triple-eigenvalue-miss",
                qexpr((4, 6 * n - 9)),
                d - Fraction(3 * l * l - 21 * l + 50, 2),
            ),
            term(
                "pair-eigenvalue-miss",
                qexpr((4, 4 * n - 4)),
                d - math.comb(l - 1, 2),
            ),
            term(
                "near-scalar",
                qexpr((1, 2 * n - 1)),
                d - math.comb(l - 1, 2),
            ),
            term(
                "big-centraliser",
                qexpr((1, l * (l + 1))),
                d - (3 * l * l - 13 * l + 18) // 2,
            ),
            term("unipotent-a3-miss", n_u3, d - (l * l - 3 * l + 2)),
            term("unipotent-a2-miss", n_u2, d - (l * l - 5 * l + 8)),
            _log_term(n, q, d),
        )
        flags = ("needs-exact-counts",) if n == 15 else ()
    else:
        # 11 <= n <= 14: per-class route, with one term per unipotent class
        # (each contributes at most q^(d-3)).
        cp = _partition_count(n, min(n, p))
        terms = (
            term("class-spread", qexpr((2, n - 1), (10, n - 2)), d - n),
            term(
                "triple-eigenvalue-miss",
                qexpr((4, 6 * n - 9)),
                d - Fraction(3 * l * l - 21 * l + 50, 2),
            ),
            term(
                "pair-eigenvalue-miss",
                qexpr((4, 4 * n - 4)),
                d - (l * l - 5 * l + 8),
            ),
            term(
                "near-scalar",
                qexpr((2, 2 * n - 1)),
                d - math.comb(l - 1, 2),
            ),
            term("unipotent-classes", qexpr((cp, 0)), d - 3),
            _log_term(n, q, d),
        )
        flags = ()
    return [
        InequalityInstance(
            module="l3", d=d, k=1, terms=terms, variant="qsgood", flags=flags
        )
    ]


def _l1_l2(l, q):
    """lambda_1 + lambda_2, l >= 4 (both characteristics)."""
    if l < 4:
        raise ValueError("smaller ranks are settled separately")
    p, e = _prime_split(q)
    n = l + 1
    w = [0] * l
    w[0] = 1
    w[1] += 1
    spec = ModuleSpec(l, tuple(w), p, e)
    d = module_dimension(spec)
    i2, _ = involution_bounds(n, q)
    if p != 3:
        n_u2 = subsystem_miss_bounds("A2", n, q)[1]
        terms = (
            _pgl_term("prime-order", n, q, d - (2 * l * l - 2 * l + 1)),
            term(
                "triple-eigenvalue-miss",
                qexpr((8, Fraction(n * n, 2) + 2)),
                d - 2 * (l * l - 2 * l + 2),
            ),
            term("near-scalar", qexpr((4, 2 * n - 1)), d - l * l),
            term("unipotent-a2-miss", n_u2, d - 2 * (l * l - 2 * l + 2)),
            term("involutions", i2.scaled(2), d - l * l),
            _log_term(n, q, d),
        )
    else:
        n_s3 = subsystem_miss_bounds("A3", n, q)[0]
        terms = (
            _pgl_term("prime-order", n, q, d - (3 * l * l + l - 6) // 2),
            term(
                "pair-eigenvalue-miss",
                qexpr((4, 2 * n - 1)),
                d - l * (l + 1) // 2,
            ),
            term("involutions", i2.scaled(2), d - (l * l - l + 2)),
            term(
                "order-three",
                qexpr(
                    (4, Fraction(n * (2 * n + 1), 3) - 1),
                    (4, Fraction(n * (2 * n + 1), 3) - 2),
                ),
                d - (l * l + l - 2),
            ),
            term("triple-eigenvalue-miss", n_s3.scaled(2), d - (l * l + l - 2)),
            _log_term(n, q, d),
        )
    return [
        InequalityInstance(module="l1+l2", d=d, k=1, terms=terms, variant="qsgood")
    ]


def _three_l1(l, q):
    """3*lambda_1, p >= 5, l >= 4."""
    if l < 4:
        raise ValueError("smaller ranks are settled separately")
    p, e = _prime_split(q)
    if p < 5:
        raise ValueError("the cube needs p >= 5")
    n = l + 1
    spec = ModuleSpec(l, (3,) + (0,) * (l - 1), p, e)
    d = module_dimension(spec)
    i2, i3 = involution_bounds(n, q)
    n_s3 = subsystem_miss_bounds("A3", n, q)[0]
    terms = (
        _pgl_term("prime-order", n, q, d - Fraction(3 * l * l + l + 2, 2)),
        term(
            "near-scalar",
            qexpr((2, 2 * n - 1)),
            d - Fraction(l * l + l + 2, 2),
        ),
        term(
            "pair-eigenvalue-miss",
            qexpr((2, 2 * n), (2, 2 * n - 1)),
            d - Fraction(l * l + 3 * l, 2),
        ),
        term("involutions", i2.scaled(2), d - (l * l - l + 4)),
        term("order-three", i3.scaled(2), d - l * (l + 1)),
        _log_term(n, q, d),
        term("triple-eigenvalue-miss", n_s3.scaled(2), d - (l * l + l + 2)),
        term("graph", qexpr((1, n * (n - 1))), d - (l * l + l + 2)),
    )
    return [
        InequalityInstance(module="3l1", d=d, k=1, terms=terms, variant="qsgood")
    ]


_PRESETS = {}


def _register(name, builder, *aliases):
    _PRESETS[name] = builder
    for alias in aliases:
        _PRESETS[alias] = builder


_register("n3-screen", _screen)
_register("l1+l_{n-1}", _worked_example, "worked-example")
_register("4l1", _four_l1)
_register("l5", _l5)
_register("l4", _l4)
_register("2l2", _two_l2)
_register("ext-L2", _ext_l2)
_register("l1+l3", _l1_l3)
_register("l2+l3", _l2_l3)
_register("l2+l4", _l2_l4)
_register("3l1+l2", _three_l1_l2)
_register("l1+l2+l3", _l1_l2_l3)
_register("2l1+l_l", _two_l1_ll)
_register("l3", _l3)
_register("l1+l2", _l1_l2)
_register("3l1", _three_l1)
_register("l1", _crude_default("l1", _weight_l1))
_register("l2", _crude_default("l2", _weight_l2))
_register("2l1", _crude_default("2l1", _weight_2l1))
_register("l1+l_l", _crude_default("l1+l_l", _weight_adjoint), "adjoint")


def preset_names():
    return tuple(sorted(_PRESETS))


def preset_instance(name, **params):
    """First inequality attempt of a preset; fact-only presets have none."""
    built = _PRESETS[name](**params)
    if isinstance(built, Verdict):
        raise ValueError("preset %r rests on an encoded fact" % name)
    return built[0]


def preset_verdict(name, **params):
    """Evaluate a named preset: first proven attempt wins, facts pass through."""
    if name not in _PRESETS:
        raise ValueError("unknown preset %r" % name)
    q = params.get("q")
    built = _PRESETS[name](**params)
    if isinstance(built, Verdict):
        return built
    last = None
    for instance in built:
        last = evaluate(instance, q)
        if last.outcome == PROVEN:
            return last
    return last


# --- remainder tables -----------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    """One row of a remainder table: a module with its base-size range."""

    module: str
    dim: str
    k: str
    n_range: str
    b_lower: str
    b_upper: str
    starred: bool

    def line(self):
        star = "*" if self.starred else ""
        return "\t".join(
            (self.module, self.dim, self.k, self.n_range,
             self.b_lower, self.b_upper + star)
        )


TABLE1_ROWS = (
    TableRow("l1", "n", "1", "2..", "n", "n+1", True),
    TableRow("2l1", "C(n+1,2)", "1", "2..", "2", "3", False),
    TableRow("l2", "C(n,2)", "1", "7..", "3", "3", False),
    TableRow("l2", "C(n,2)", "1", "5..6", "3", "4", False),
    TableRow("l2", "C(n,2)", "1", "4", "3", "5", False),
    TableRow("3l1", "4", "1", "2", "2", "2", True),
    TableRow("l3", "C(n,3)", "1", "7..8", "2", "2", False),
    TableRow("l3", "20", "1", "6", "2", "4", True),
    TableRow("l1+l_l", "n^2-1-eps_n", "1", "3..", "2", "2", False),
    TableRow("l1+l2", "16", "1", "4", "2", "2", False),
    TableRow("(p^a+1)l1", "n^2", "1", "2..", "2", "2", True),
    TableRow("l1+p^a*l_l", "n^2", "1", "3..", "2", "2", True),
    TableRow("2l2", "20-eps_3", "1", "4", "1", "2", True),
    TableRow("l3", "84", "1", "9", "1", "2", True),
    TableRow("3l1", "10", "1", "3", "1", "2", True),
    TableRow("l4", "70", "1", "8", "1", "2", True),
)

TABLE2_ROWS = (
    TableRow("l1", "n", "2..", "2..", "1", "ceil(n/k)+1", True),
    TableRow("2l1", "C(n+1,2)", "2", "2..", "1", "2", False),
    TableRow("l2", "C(n,2)", "2", "5..", "2", "2", False),
    TableRow("l2", "C(n,2)", "2", "4", "2", "3", False),
    TableRow("l2", "C(n,2)", "3", "4..6", "1", "2", False),
    TableRow("l2", "C(n,2)", "4", "4", "1", "2", False),
    TableRow("l3", "20", "2..3", "6", "ceil(2/k)", "ceil(4/k)", True),
    TableRow("l1+l_l", "8-eps_3", "2", "3", "1", "2", True),
    TableRow("(p^(e/2)+1)l1", "n^2", "1/2", "2..", "2", "3", False),
    TableRow("(p^(e/2)+1)l2", "C(n,2)^2", "1/2", "4", "1", "2", True),
    TableRow("2(p^(e/2)+1)l1", "C(n+1,2)^2", "1/2", "2", "1", "2", False),
    TableRow("(p^(e/3)+p^(2e/3)+1)l1", "n^3", "1/3", "3", "1", "2", False),
    TableRow("(p^(e/3)+p^(2e/3)+1)l1", "n^3", "1/3", "2", "2", "2", False),
    TableRow("(p^(e/4)+...+1)l1", "n^4", "1/4", "2", "1", "2", False),
)


def table_rows(which):
    if which == 1:
        return TABLE1_ROWS
    if which == 2:
        return TABLE2_ROWS
    raise ValueError("the remainder tables are numbered 1 and 2")


def table_text(which):
    header = "module\tdim\tk\tn\tb_min\tb_max"
    return "\n".join([header] + [row.line() for row in table_rows(which)]) + "\n"


def _range_contains(text, value):
    if text.endswith(".."):
        return value >= int(text[:-2])
    if ".." in text:
        lo, hi = text.split("..")
        return int(lo) <= value <= int(hi)
    return value == int(text)


def in_remainder_tables(module, n, k=1):
    """Whether (module, n, k) matches a row of the remainder tables."""
    k = Fraction(k)
    for row in TABLE1_ROWS + TABLE2_ROWS:
        if row.module != module:
            continue
        if not _range_contains(row.n_range, n):
            continue
        if row.k.endswith(".."):
            if k >= Fraction(row.k[:-2]):
                return True
        elif ".." in row.k:
            lo, hi = row.k.split("..")
            if Fraction(lo) <= k <= Fraction(hi):
                return True
        elif k == Fraction(row.k):
            return True
    return False


# --- records --------------------------------------------------------------

RECORD_VERSION = "regorb-verdict-records v1"
RECORD_HEADER = (
    "# %s\n# module\tn\tq\tk\tvariant\toutcome\tmargin_exp\tdominating\tflags\n"
    % RECORD_VERSION
)


def verdict_record(module, n, q, k, verdict):
    """One tab-separated line for a verdict, stable under term reordering."""
    margin = (
        "-"
        if verdict.margin is None
        else str(margin_exponent(verdict.margin, q))
    )
    dominating = ",".join(
        "%s:%s" % (label, exp) for label, exp in verdict.dominating
    ) or "-"
    flags = ";".join(verdict.flags) or "-"
    return "\t".join(
        (
            module,
            str(n),
            str(q),
            str(k),
            verdict.variant,
            verdict.outcome,
            margin,
            dominating,
            flags,
        )
    )
