"""Command-line driver: tables, verdict sweeps, oracle jobs, golden diffs.

Subcommands: weights, strings, nets, counts, verdict, sweep, oracle,
reproduce-tables.  Exit codes: 0 success, 2 usage error, 3 cap exceeded,
4 golden-file mismatch.  A config file of plain ``key = value`` lines may
supply any flag default; explicit flags win.
"""

from __future__ import annotations

import argparse
import re
import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import charmod, counts, nets, oracle, verdict
from .charmod import CapExceeded, ModuleSpec
from .oracle import OracleCapError
from .rootsys import RootSystemA, Subsystem, Weight

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_GOLDEN = 4

MAX_DIMENSION_CAP = charmod.DEFAULT_DIMENSION_CAP
MAX_THREADS = 16

GOLDEN_DIR = Path(__file__).with_name("golden")


class UsageError(Exception):
    pass


# --- selectors -----------------------------------------------------------

_PIECE_RE = re.compile(r"^(\d*)l_?(\{n-1\}|l|\d+)$")

_MODULE_ALIASES = {
    "adjoint": "l1+l_l",
    "worked-example": "l1+l_{n-1}",
}


def module_weight(module, l):
    """Fundamental-weight coefficients for a family id at a concrete rank."""
    module = _MODULE_ALIASES.get(module, module)
    coeffs = [0] * l
    for piece in module.split("+"):
        m = _PIECE_RE.match(piece)
        if m is None:
            raise UsageError("cannot parse module piece %r" % piece)
        mult = int(m.group(1)) if m.group(1) else 1
        token = m.group(2)
        if token == "{n-1}":
            index = l - 1
        elif token == "l":
            index = l
        else:
            index = int(token)
        if not 1 <= index <= l:
            raise UsageError(
                "fundamental weight %d out of range for rank %d" % (index, l)
            )
        coeffs[index - 1] += mult
    return tuple(coeffs)


def psi_indices(text):
    """Simple-root index tuple for a subsystem label or explicit list.

    Labels pack components left to right with one skipped node between
    them: a2 -> (1,2), a1^2 -> (1,3), a2+a1 -> (1,2,4).
    """
    if re.fullmatch(r"\d+(,\d+)*", text):
        return tuple(int(tok) for tok in text.split(","))
    indices = []
    next_node = 1
    for part in text.split("+"):
        m = re.fullmatch(r"(\d*)a(\d+)(?:\^(\d+))?", part)
        if m is None:
            raise UsageError("cannot parse subsystem %r" % part)
        copies = (int(m.group(1)) if m.group(1) else 1) * (
            int(m.group(3)) if m.group(3) else 1
        )
        size = int(m.group(2))
        for _ in range(copies):
            indices.extend(range(next_node, next_node + size))
            next_node += size + 1
    return tuple(indices)


def _int_list(text, what):
    """Parse '4', '2,3,5', '4:8', or '4..8' (ranges inclusive)."""
    out = []
    for chunk in text.split(","):
        m = re.fullmatch(r"(-?\d+)(?::|\.\.)(-?\d+)", chunk)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if hi < lo:
                raise UsageError("empty %s range %r" % (what, chunk))
            out.extend(range(lo, hi + 1))
            continue
        if not re.fullmatch(r"-?\d+", chunk):
            raise UsageError("cannot parse %s value %r" % (what, chunk))
        out.append(int(chunk))
    if not out:
        raise UsageError("empty %s selection" % what)
    return tuple(out)


# --- job configuration ---------------------------------------------------

FORMATS = ("table", "csv", "records")


@dataclass(frozen=True)
class JobConfig:
    subcommand: str
    module: str | None = None
    weight: tuple | None = None
    l_values: tuple = ()
    n_values: tuple = ()
    q_values: tuple = ()
    k_values: tuple = ()
    e: int = 1
    p: int | None = None
    psi: str = "a1"
    r_primes: tuple = (2, 3)
    p_primes: tuple = (2, 3, 5)
    fmt: str = "table"
    output: str | None = None
    threads: int = 1
    dim_cap: int = MAX_DIMENSION_CAP
    job: str | None = None
    golden: str | None = None
    write_golden: bool = False

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise UsageError("unknown format %r" % self.fmt)
        if self.dim_cap > MAX_DIMENSION_CAP:
            raise UsageError("dimension cap above the global maximum")
        if not 1 <= self.threads <= MAX_THREADS:
            raise UsageError("thread count out of range")


def _load_config(path):
    values = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError("config line without '=': %r" % raw)
        key, _, val = line.partition("=")
        values[key.strip().replace("-", "_")] = val.strip()
    return values


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="regorb",
        description="Weight tables, codimension bounds, verdicts, and exact "
        "small-case oracles for regular orbits of linear groups.",
    )
    parser.add_argument("--config", help="key = value file with flag defaults")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(sp, *names):
        if "module" in names:
            sp.add_argument("--module", help="weight family id, e.g. 4l1 or l1+l_l")
            sp.add_argument("--weight", help="explicit coefficients, e.g. 0,2,0")
        if "l" in names:
            sp.add_argument("--l", help="rank (n = l + 1)")
        if "n" in names:
            sp.add_argument("--n", help="matrix degree (l = n - 1)")
        if "q" in names:
            sp.add_argument("--q", help="field size or list/range")
        if "p" in names:
            sp.add_argument("--p", help="characteristic")
            sp.add_argument("--e", help="field exponent, default 1")
        if "k" in names:
            sp.add_argument("--k", help="extension degree, default 1")
        if "psi" in names:
            sp.add_argument("--psi", help="subsystem label (a1, a2, a1^2) or indices")
        if "fmt" in names:
            sp.add_argument("--format", dest="fmt", choices=FORMATS)
        sp.add_argument("--output", help="write to this path instead of stdout")
        sp.add_argument("--threads", help="worker count (outputs never depend on it)")
        sp.add_argument("--dim-cap", dest="dim_cap", help="character dimension cap")

    sp = sub.add_parser("weights", help="Weyl-orbit table of one module")
    common(sp, "module", "l", "p", "fmt")
    sp = sub.add_parser("strings", help="weight-string contribution table")
    common(sp, "module", "l", "p", "psi", "fmt")
    sp.add_argument("--r-primes", dest="r_primes", help="semisimple prime columns")
    sp.add_argument("--p-primes", dest="p_primes", help="unipotent prime columns")
    sp = sub.add_parser("nets", help="subsystem net decomposition of one module")
    common(sp, "module", "l", "p", "psi", "fmt")
    sp = sub.add_parser("counts", help="order and class-count bound table")
    common(sp, "n", "q", "k", "fmt")
    sp = sub.add_parser("verdict", help="evaluate one module instance")
    common(sp, "module", "l", "n", "q", "k", "fmt")
    sp = sub.add_parser("sweep", help="verdict records over a parameter grid")
    common(sp, "module", "l", "n", "q", "k", "fmt")
    sp = sub.add_parser("oracle", help="run a named exact small-case job")
    sp.add_argument("--job", help="job name; see --job list")
    sp.add_argument("--output", help="write to this path instead of stdout")
    sp.add_argument("--threads", help="worker count (outputs never depend on it)")
    sp.add_argument("--dim-cap", dest="dim_cap")
    sp = sub.add_parser("reproduce-tables", help="regenerate golden tables and diff")
    sp.add_argument("--golden", help="directory of golden files")
    sp.add_argument("--write", dest="write_golden", action="store_true",
                    help="rewrite the golden files instead of diffing")
    sp.add_argument("--output", help=argparse.SUPPRESS)
    sp.add_argument("--threads", help=argparse.SUPPRESS)
    sp.add_argument("--dim-cap", dest="dim_cap", help=argparse.SUPPRESS)
    return parser


_DEFAULT_FMT = {
    "weights": "table",
    "strings": "table",
    "nets": "table",
    "counts": "table",
    "verdict": "records",
    "sweep": "records",
}


_CONFIG_ALIASES = {"fmt": "format"}


def _config_from_args(args):
    file_values = _load_config(args.config) if args.config else {}

    def pick(name, fallback=None):
        value = getattr(args, name, None)
        if value is None:
            value = file_values.get(name)
        if value is None and name in _CONFIG_ALIASES:
            value = file_values.get(_CONFIG_ALIASES[name])
        return fallback if value is None else value

    sub = args.subcommand
    fmt = pick("fmt") or _DEFAULT_FMT.get(sub, "table")
    weight = pick("weight")
    return JobConfig(
        subcommand=sub,
        module=pick("module"),
        weight=tuple(int(t) for t in weight.split(",")) if weight else None,
        l_values=_int_list(pick("l"), "l") if pick("l") else (),
        n_values=_int_list(pick("n"), "n") if pick("n") else (),
        q_values=_int_list(pick("q"), "q") if pick("q") else (),
        k_values=_int_list(pick("k"), "k") if pick("k") else (),
        e=int(pick("e", 1)),
        p=int(pick("p")) if pick("p") else None,
        psi=pick("psi", "a1"),
        r_primes=_int_list(pick("r_primes"), "r") if pick("r_primes") else (2, 3),
        p_primes=_int_list(pick("p_primes"), "p") if pick("p_primes") else (2, 3, 5),
        fmt=fmt,
        output=pick("output"),
        threads=int(pick("threads", 1)),
        dim_cap=int(pick("dim_cap", MAX_DIMENSION_CAP)),
        job=pick("job"),
        golden=pick("golden"),
        write_golden=bool(getattr(args, "write_golden", False)),
    )


def _emit(cfg, text):
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def _single(cfg, field, what):
    values = getattr(cfg, field)
    if len(values) != 1:
        raise UsageError("exactly one %s value is required" % what)
    return values[0]


def _character(cfg, l, p):
    if cfg.weight is not None:
        coeffs = cfg.weight
        if len(coeffs) != l:
            raise UsageError("weight has %d entries for rank %d" % (len(coeffs), l))
    elif cfg.module:
        coeffs = module_weight(cfg.module, l)
    else:
        raise UsageError("need --module or --weight")
    spec = ModuleSpec(l, coeffs, p, cfg.e)
    return charmod.irreducible_character(spec, cap=cfg.dim_cap)


# --- table rendering helpers ---------------------------------------------

def _render_columns(headers, body, left=(0,)):
    widths = [
        max(len(headers[c]), max((len(row[c]) for row in body), default=0))
        for c in range(len(headers))
    ]
    out = []
    for row in [headers] + body:
        cells = []
        for c, text in enumerate(row):
            if c in left:
                cells.append(text.ljust(widths[c]))
            else:
                cells.append(text.rjust(widths[c]))
        out.append("  ".join(cells).rstrip())
    return "\n".join(out) + "\n"


def _weight_label(w):
    return "(" + ",".join(str(c) for c in w.coeffs) + ")"


# --- subcommand handlers -------------------------------------------------

def _cmd_weights(cfg):
    l = _single(cfg, "l_values", "l")
    if cfg.p is None:
        raise UsageError("need --p")
    char = _character(cfg, l, cfg.p)
    system = RootSystemA(l)
    rows = []
    for w, mult in char.dominant_items():
        rows.append((w, system.orbit_size(w), mult))
    rows.sort(key=lambda item: (-sum(item[0].coeffs), item[0].coeffs))
    if cfg.fmt == "csv":
        lines = ["weight,orbit,mult"]
        for w, orbit, mult in rows:
            lines.append(
                "%s,%d,%d" % ("+".join(str(c) for c in w.coeffs), orbit, mult)
            )
        lines.append("dim,%d," % char.dimension)
        _emit(cfg, "\n".join(lines) + "\n")
        return EXIT_OK
    body = [
        [str(i + 1), _weight_label(w), str(orbit), str(mult)]
        for i, (w, orbit, mult) in enumerate(rows)
    ]
    body.append(["dim", "", str(char.dimension), ""])
    _emit(cfg, _render_columns(["i", "mu", "orbit", "mult"], body, left=(0, 1)))
    return EXIT_OK


def _contribution(cfg, l, p):
    char = _character(cfg, l, p)
    psi = Subsystem(l, psi_indices(cfg.psi))
    return nets.contribution_table(
        char, psi, primes_r=cfg.r_primes, primes_p=cfg.p_primes
    )


def _cmd_strings(cfg):
    l = _single(cfg, "l_values", "l")
    if cfg.p is None:
        raise UsageError("need --p")
    report = _contribution(cfg, l, cfg.p)
    _emit(cfg, report.to_csv() if cfg.fmt == "csv" else report.to_text())
    return EXIT_OK


def _cmd_nets(cfg):
    l = _single(cfg, "l_values", "l")
    if cfg.p is None:
        raise UsageError("need --p")
    char = _character(cfg, l, cfg.p)
    psi = Subsystem(l, psi_indices(cfg.psi))
    net_list = nets.psi_nets(char, psi)
    if cfg.fmt == "csv":
        lines = ["net,signature,dim,highest,members"]
        for i, net in enumerate(net_list):
            lines.append(
                "%d,%s,%d,%s,%d"
                % (
                    i + 1,
                    net.signature(),
                    net.dimension,
                    "+".join(str(c) for c in net.highest.coeffs),
                    len(net.members),
                )
            )
        _emit(cfg, "\n".join(lines) + "\n")
        return EXIT_OK
    body = [
        [
            str(i + 1),
            net.signature(),
            str(net.dimension),
            _weight_label(net.highest),
            str(len(net.members)),
        ]
        for i, net in enumerate(net_list)
    ]
    total = sum(net.dimension for net in net_list)
    body.append(["total", "", str(total), "", str(len(net_list))])
    _emit(
        cfg,
        _render_columns(["net", "signature", "dim", "highest", "members"], body,
                        left=(0, 1, 3)),
    )
    return EXIT_OK


def _sym_text(expr):
    parts = []
    for coef, exponent in expr.terms:
        if exponent == 0:
            parts.append(str(coef))
        elif exponent.denominator == 1:
            parts.append("%s*q^%d" % (coef, exponent.numerator))
        else:
            parts.append(
                "%s*q^(%d/%d)" % (coef, exponent.numerator, exponent.denominator)
            )
    return " + ".join(parts)


def _value_text(value):
    if getattr(value, "denominator", 1) == 1:
        return str(int(value))
    return "%.6g" % float(value)


def _cmd_counts(cfg):
    n = _single(cfg, "n_values", "n")
    q = _single(cfg, "q_values", "q")
    i2, i3 = counts.involution_bounds(n, q)
    g_invol, g_fix = counts.graph_auto_counts(n, q)
    entries = [
        ("involutions", i2),
        ("order-3", i3),
        ("class-count", counts.class_count_bound(n, q)),
        ("graph-involutions", g_invol),
        ("graph-fix", g_fix),
    ]
    orders = [
        ("|GL|", counts.group_order("GL", n, q)),
        ("|SL|=|PGL|", counts.group_order("SL", n, q)),
        ("|PSL|", counts.group_order("PSL", n, q)),
    ]
    ranks = [("rank-%d" % k, counts.rank_count(n, k, q)) for k in range(1, n + 1)]
    if cfg.fmt == "csv":
        _emit(cfg, counts.bounds_csv(entries))
        return EXIT_OK
    body = [[label, "", str(value)] for label, value in orders]
    body += [
        [label, _sym_text(expr), _value_text(expr.evaluate(q))]
        for label, expr in entries
    ]
    body += [[label, "", str(value)] for label, value in ranks]
    _emit(cfg, _render_columns(["bound", "symbolic", "value"], body, left=(0, 1)))
    return EXIT_OK


def _preset_params(cfg, l=None, n=None, q=None, k=None):
    params = {}
    if l is not None:
        params["l"] = l
    if n is not None:
        params["n"] = n
    if q is not None:
        params["q"] = q
    if k is not None and k != 1:
        params["k"] = k
    return params


_VERDICT_LOCK = threading.Lock()


def _one_verdict(module, params):
    # workprec swaps the global mpmath context, so verdict evaluation is
    # serialized; thread count can never change the records
    with _VERDICT_LOCK:
        return verdict.preset_verdict(module, **params)


def _cmd_verdict(cfg):
    if not cfg.module:
        raise UsageError("need --module")
    q = _single(cfg, "q_values", "q")
    l = _single(cfg, "l_values", "l") if cfg.l_values else None
    n = _single(cfg, "n_values", "n") if cfg.n_values else None
    k = _single(cfg, "k_values", "k") if cfg.k_values else 1
    if (l is None) == (n is None):
        raise UsageError("give exactly one of --l and --n")
    try:
        v = _one_verdict(cfg.module, _preset_params(cfg, l=l, n=n, q=q, k=k))
    except (TypeError, ValueError, KeyError) as exc:
        raise UsageError(str(exc))
    n_out = n if n is not None else l + 1
    record = verdict.verdict_record(cfg.module, n_out, q, k, v)
    if cfg.fmt == "records":
        _emit(cfg, verdict.RECORD_HEADER + record + "\n")
        return EXIT_OK
    body = [
        ["module", cfg.module],
        ["n", str(n_out)],
        ["q", str(q)],
        ["k", str(k)],
        ["variant", v.variant],
        ["outcome", v.outcome],
        ["margin-exp", str(verdict.margin_exponent(v.margin, q))],
        ["dominating", ",".join("%s:%d" % item for item in v.dominating)],
        ["flags", ";".join(v.flags) or "-"],
    ]
    _emit(cfg, _render_columns(["field", "value"], body, left=(0, 1)))
    return EXIT_OK


def _cmd_sweep(cfg):
    if not cfg.module:
        raise UsageError("need --module")
    if not cfg.q_values:
        raise UsageError("need --q")
    if bool(cfg.l_values) == bool(cfg.n_values):
        raise UsageError("give exactly one of --l and --n")
    axis = "l" if cfg.l_values else "n"
    firsts = tuple(sorted(cfg.l_values or cfg.n_values))
    qs = tuple(sorted(cfg.q_values))
    ks = tuple(sorted(cfg.k_values)) or (1,)
    points = [(a, q, k) for a in firsts for q in qs for k in ks]

    def work(point):
        a, q, k = point
        params = _preset_params(
            cfg, l=a if axis == "l" else None, n=a if axis == "n" else None, q=q, k=k
        )
        try:
            v = _one_verdict(cfg.module, params)
        except (TypeError, ValueError, KeyError) as exc:
            return ("skip", point, str(exc))
        n_out = a + 1 if axis == "l" else a
        return ("ok", point, verdict.verdict_record(cfg.module, n_out, q, k, v))

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(work, points))
    else:
        results = [work(point) for point in points]
    lines = [verdict.RECORD_HEADER.rstrip("\n")]
    for status, point, payload in results:
        if status == "ok":
            lines.append(payload)
        else:
            print(
                "skip %s %s=%d q=%d k=%d: %s"
                % (cfg.module, axis, point[0], point[1], point[2], payload),
                file=sys.stderr,
            )
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


# --- oracle jobs ---------------------------------------------------------

def _hist_text(histogram):
    return ", ".join("%d x%d" % (size, count) for size, count in histogram)


def _job_sl2q5_sym3(threads):
    f5 = oracle.build_field(5, 1)
    rep = oracle.build_representation(2, f5, "sym3")
    report = oracle.orbit_report(rep, threads=threads)
    if (0, 1, 0, 0) not in report.regular_representatives:
        raise RuntimeError("expected regular representative is missing")
    return [
        "e₁²e₂ regular, orbit 120",
        "group order %d on %d vectors" % (report.group_order, report.space_size),
        "orbit histogram: " + _hist_text(report.histogram),
        "regular orbits: %d" % report.regular_orbit_count,
    ]


def _overgroup_sym3(kind):
    f5 = oracle.build_field(5, 1)
    rep = oracle.build_representation(2, f5, "sym3")
    if kind == "gl":
        extra = oracle.functor_image(2, f5, "sym3", ((2, 0), (0, 1)))
        return oracle.with_extra_generator(rep, extra, order_factor=4, note="gl")
    return oracle.with_extra_generator(
        rep, oracle.scalar_matrix(f5, 4, 2), order_factor=2, note="z2"
    )


def _job_overgroup(kind, threads):
    rep = _overgroup_sym3(kind)
    report = oracle.orbit_report(rep, threads=threads)
    search = oracle.base_size_search(rep)
    return [
        "group order %d on %d vectors" % (report.group_order, report.space_size),
        "regular orbits: %d" % report.regular_orbit_count,
        "base size %d at %s"
        % (search.base_size, ", ".join(str(v) for v in search.base_witness)),
    ]


def _job_psl32_adjoint(threads):
    rep = oracle.build_representation(3, oracle.build_field(2, 1), "adjoint")
    report = oracle.orbit_report(rep, threads=threads)
    search = oracle.base_size_search(rep)
    return [
        "group order %d on %d vectors" % (report.group_order, report.space_size),
        "regular orbits: %d" % report.regular_orbit_count,
        "orbit histogram: " + _hist_text(report.histogram),
        "base size %d" % search.base_size,
    ]


def _job_sl2q8_tensor(threads):
    rep = oracle.build_representation(2, oracle.build_field(2, 3), "dual*natural^(2)")
    report = oracle.orbit_report(rep, threads=threads)
    if (1, 0, 0, 0) not in report.regular_representatives:
        raise RuntimeError("Diag(1,0) is not in a regular orbit")
    return [
        "Diag(1,0) regular, orbit %d" % report.group_order,
        "orbit histogram: " + _hist_text(report.histogram),
    ]


def _job_sl2q9_tensor(threads):
    f9 = oracle.build_field(3, 2)
    rep = oracle.build_representation(2, f9, "dual*natural^(3)")
    group = oracle.enumerate_group(f9, rep.generators)
    v1, vj = (1, 0, 0, 0), (4, 0, 0, 0)
    if len(oracle.stabilizer(f9, group, v1)) != 1:
        raise RuntimeError("Diag(1,0) stabilizer is nontrivial")
    if len(oracle.stabilizer(f9, group, vj)) != 1:
        raise RuntimeError("Diag(j,0) stabilizer is nontrivial")
    orb = set(oracle._orbit_closure(f9, rep.generators, oracle._encode(v1, 9), 9, 4))
    if oracle._encode(vj, 9) in orb:
        raise RuntimeError("the two representatives share an orbit")
    return [
        "Diag(1,0) and Diag(4,0) regular, distinct orbits of size %d" % len(group),
    ]


def _job_natural_base(n, q, k, autos):
    ok, witness = oracle.verify_natural_base(n, q, k, automorphisms=autos)
    if not ok:
        raise RuntimeError("staggered base check failed: %r" % (witness,))
    lines = [
        "base verified for n=%d q=%d k=%d%s"
        % (n, q, k, " with " + ",".join(autos) if autos else ""),
        "size %d, stabilizer order %d"
        % (witness["size"], witness["stabilizer_order"]),
    ]
    if witness.get("expected") is not None:
        lines.append("expected size %d" % witness["expected"])
    if witness.get("minimal_confirmed"):
        lines.append("minimality confirmed")
    return lines


ORACLE_JOBS = {
    "sl2q5-sym3": lambda threads: _job_sl2q5_sym3(threads),
    "gl2q5-sym3": lambda threads: _job_overgroup("gl", threads),
    "detsq-q5-sym3": lambda threads: _job_overgroup("detsq", threads),
    "psl32-adjoint": lambda threads: _job_psl32_adjoint(threads),
    "sl2q8-tensor": lambda threads: _job_sl2q8_tensor(threads),
    "sl2q9-tensor": lambda threads: _job_sl2q9_tensor(threads),
    "base-3-4-2": lambda threads: _job_natural_base(3, 4, 2, ()),
    "base-2-4-2-scalars": lambda threads: _job_natural_base(2, 4, 2, ("scalars",)),
    "base-4-2-2": lambda threads: _job_natural_base(4, 2, 2, ()),
    "base-4-2-2-scalars": lambda threads: _job_natural_base(4, 2, 2, ("scalars",)),
}


def _cmd_oracle(cfg):
    if cfg.job == "list" or not cfg.job:
        _emit(cfg, "\n".join(sorted(ORACLE_JOBS)) + "\n")
        return EXIT_OK if cfg.job else EXIT_USAGE
    if cfg.job not in ORACLE_JOBS:
        raise UsageError(
            "unknown job %r; available: %s" % (cfg.job, ", ".join(sorted(ORACLE_JOBS)))
        )
    lines = ORACLE_JOBS[cfg.job](cfg.threads)
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


# --- golden tables -------------------------------------------------------

def _strings_producer(module, l, p, psi, r_primes=(2, 3), p_primes=(2, 3, 5)):
    def produce():
        coeffs = module_weight(module, l)
        char = charmod.irreducible_character(ModuleSpec(l, coeffs, p))
        report = nets.contribution_table(
            char, Subsystem(l, psi_indices(psi)), primes_r=r_primes, primes_p=p_primes
        )
        return report.to_text()

    return produce


def _weights_producer(module, l, p):
    def produce():
        coeffs = module_weight(module, l)
        char = charmod.irreducible_character(ModuleSpec(l, coeffs, p))
        system = RootSystemA(l)
        rows = sorted(
            char.dominant_items(),
            key=lambda item: (-sum(item[0].coeffs), item[0].coeffs),
        )
        body = [
            [str(i + 1), _weight_label(w), str(system.orbit_size(w)), str(mult)]
            for i, (w, mult) in enumerate(rows)
        ]
        body.append(["dim", "", str(char.dimension), ""])
        return _render_columns(["i", "mu", "orbit", "mult"], body, left=(0, 1))

    return produce


# rows of the codimension summary: family id, rank, instantiating primes
CONDTABLE_ROWS = (
    ("l6", 11, (2, 3)),
    ("l6", 12, (2, 3)),
    ("l1+l4", 7, (3, 5)),
    ("2l1+l2", 2, (3, 5)),
    ("2l1+l2", 3, (3, 5)),
    ("2l1+l2", 4, (3, 5)),
    ("2l1+l2", 5, (3, 5)),
    ("l1+2l2", 3, (3, 5)),
    ("2l3", 5, (3, 5)),
    ("2l1+l3", 4, (5,)),
    ("5l1", 1, (7, 11)),
    ("5l1", 2, (7, 11)),
    ("5l1", 3, (7, 11)),
    ("3l2", 3, (5, 7)),
    ("l1+l4", 6, (2, 3)),
    ("l1+l5", 7, (2, 3)),
    ("l1+l6", 8, (2, 3)),
)


def condtable_line(module, l, p):
    """One instantiated row of the codimension summary table.

    Semisimple cells are the A1 weight-string totals at r = 2, 3 and
    generic r; the unipotent cell is the A1 total at the module's own
    characteristic; the graph cell applies only to flip-symmetric weights.
    """
    coeffs = module_weight(module, l)
    char = charmod.irreducible_character(ModuleSpec(l, coeffs, p))
    report = nets.contribution_table(
        char, Subsystem(l, (1,)), primes_r=(2, 3), primes_p=(p,)
    )
    cells = [
        module,
        str(l),
        str(p),
        str(char.dimension),
        str(report.total_semisimple(2)),
        str(report.total_semisimple(3)),
        str(report.total_semisimple("generic")),
        str(report.total_unipotent(p)),
    ]
    if coeffs == coeffs[::-1]:
        cells.append(str(nets.graph_fix_bound(char)))
    else:
        cells.append("-")
    return "\t".join(cells)


def _condtable_producer():
    def produce():
        lines = ["module\tl\tp\td\tc_s:r2\tc_s:r3\tc_s:generic\tc_u:p\tgraph_fix"]
        for module, l, primes in CONDTABLE_ROWS:
            for p in primes:
                lines.append(condtable_line(module, l, p))
        return "\n".join(lines) + "\n"

    return produce


GOLDEN_TABLES = (
    ("table1", lambda: verdict.table_text("table1")),
    ("table2", lambda: verdict.table_text("table2")),
    ("condtable", _condtable_producer()),
    ("weights-4l1-l3-p5", _weights_producer("4l1", 3, 5)),
    ("weights-2l2-l5-p3", _weights_producer("2l2", 5, 3)),
    ("weights-worked-example-l4-p2", _weights_producer("l1+l_{n-1}", 4, 2)),
    ("strings-worked-example-l4-p2-a1", _strings_producer("l1+l_{n-1}", 4, 2, "a1")),
    ("strings-4l1-l3-p5-a1", _strings_producer("4l1", 3, 5, "a1")),
    ("strings-l1+l3-l4-p2-a1", _strings_producer("l1+l3", 4, 2, "a1")),
    ("strings-l2+l3-l4-p2-a1", _strings_producer("l2+l3", 4, 2, "a1")),
    ("strings-l2+l3-l5-p3-a1", _strings_producer("l2+l3", 5, 3, "a1")),
    ("strings-l2+l4-l5-p2-a1", _strings_producer("l2+l4", 5, 2, "a1")),
    ("strings-3l1+l2-l2-p5-a1", _strings_producer("3l1+l2", 2, 5, "a1")),
    ("strings-l1+l2+l3-l3-p2-a1", _strings_producer("l1+l2+l3", 3, 2, "a1")),
    ("strings-2l2-l5-p3-a1", _strings_producer("2l2", 5, 3, "a1")),
    ("strings-l5-l9-p2-a1", _strings_producer("l5", 9, 2, "a1")),
    ("strings-2l1+l_l-l3-p3-a1", _strings_producer("2l1+l_l", 3, 3, "a1")),
    ("strings-l1+l2-l2-p3-a1", _strings_producer("l1+l2", 2, 3, "a1")),
    ("strings-3l1-l3-p5-a3", _strings_producer("3l1", 3, 5, "a3")),
    ("strings-l4-l7-p2-a3", _strings_producer("l4", 7, 2, "a3")),
    ("strings-l3-l9-p2-a1", _strings_producer("l3", 9, 2, "a1")),
    ("strings-l3-l9-p2-a2", _strings_producer("l3", 9, 2, "a2")),
)


def _cmd_reproduce(cfg):
    directory = Path(cfg.golden) if cfg.golden else GOLDEN_DIR
    if cfg.write_golden:
        directory.mkdir(parents=True, exist_ok=True)
        for name, producer in GOLDEN_TABLES:
            (directory / (name + ".txt")).write_text(producer())
        print("wrote %d golden tables to %s" % (len(GOLDEN_TABLES), directory))
        return EXIT_OK
    mismatches = []
    for name, producer in GOLDEN_TABLES:
        path = directory / (name + ".txt")
        if not path.exists():
            mismatches.append("%s: golden file missing" % name)
            continue
        if path.read_text() != producer():
            mismatches.append("%s: regenerated table differs" % name)
    if mismatches:
        for line in mismatches:
            print(line, file=sys.stderr)
        return EXIT_GOLDEN
    print("%d golden tables reproduced" % len(GOLDEN_TABLES))
    return EXIT_OK


_HANDLERS = {
    "weights": _cmd_weights,
    "strings": _cmd_strings,
    "nets": _cmd_nets,
    "counts": _cmd_counts,
    "verdict": _cmd_verdict,
    "sweep": _cmd_sweep,
    "oracle": _cmd_oracle,
    "reproduce-tables": _cmd_reproduce,
}


def run(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    try:
        cfg = _config_from_args(args)
        return _HANDLERS[cfg.subcommand](cfg)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, OracleCapError) as exc:
        print("cap exceeded: %s" % exc, file=sys.stderr)
        return EXIT_CAP


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
