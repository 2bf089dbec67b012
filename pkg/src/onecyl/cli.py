"""Command-line interface.

Every command prints its full configuration together with the result, so
a run can be repeated from its output alone.  Flags may also be given as
environment variables named ``ONECYL_<FLAG>`` (for example ``ONECYL_SEED``);
an explicit flag wins over the environment.

Exit codes: 0 success, 2 parse error, 3 unsupported stratum, 4 budget
exceeded.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .perms import BudgetExceeded, StratumParseError, parse_stratum, several_components

ENV_PREFIX = "ONECYL_"

EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_BUDGET = 0, 2, 3, 4


class Unsupported(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    stratum: str | None = None
    max_squares: int | None = None
    grid: int | None = None
    samples: int | None = None
    walk: int | None = None
    seed: int = 0
    format: str = "text"
    precision: float = 1e-10
    threads: int | None = None
    extra: dict = field(default_factory=dict)


# shared options: (flag, type, default, help)
_COMMON = [
    ("format", str, "text", "output format: text, tsv or json"),
    ("threads", int, None, "worker threads for the band-count kernel"),
    ("seed", int, 0, "seed of the random generator"),
    ("max-squares", int, None, "largest number of squares to enumerate"),
    ("grid", int, None, "bound L of the integer lengths grid"),
    ("samples", int, None, "number of random samples"),
    ("walk", int, None, "maximal length of the random Rauzy walks"),
    ("precision", float, 1e-10, "target precision of numerical zeta values"),
]


def _env_default(name, typ, default):
    raw = os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))
    if raw is None:
        return default
    try:
        return typ(raw)
    except ValueError:
        raise SystemExit(f"error: bad value {raw!r} for {ENV_PREFIX}{name.upper()}")


def _common_parser():
    p = argparse.ArgumentParser(add_help=False)
    for name, typ, default, hlp in _COMMON:
        kw = {"type": typ, "default": _env_default(name, typ, default), "help": hlp}
        if name == "format":
            kw["choices"] = ["text", "tsv", "json"]
        p.add_argument("--" + name, **kw)
    return p


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="onecyl", description="One-cylinder contributions to volumes of strata.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagrams", parents=[common], help="one-cylinder diagrams of a stratum")
    p.add_argument("stratum")

    p = sub.add_parser("table", parents=[common], help="table of a dimension (4, 5 or 6)")
    p.add_argument("dim", type=int, choices=[4, 5, 6])

    p = sub.add_parser("c1", parents=[common], help="total one-cylinder contribution")
    p.add_argument("stratum")

    p = sub.add_parser("frobenius", parents=[common], help="character-sum count and closed forms")
    p.add_argument("stratum", help="stratum, may contain g as in 'H(2g-2)'")
    p.add_argument("--g", type=int, default=None)

    p = sub.add_parser("genfun", parents=[common], help="generating polynomials")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--abelian", type=int, metavar="N")
    g.add_argument("--quadratic", type=int, nargs=3, metavar=("L", "M", "N"))

    p = sub.add_parser("enumerate", parents=[common], help="census of square-tiled surfaces")
    p.add_argument("stratum")
    p.add_argument("--method", choices=["brute", "diagrams"], default="brute")

    p = sub.add_parser("volume-estimate", parents=[common], help="volume from sampled p1")
    p.add_argument("stratum")
    return parser


# helpers ---------------------------------------------------------------------

def _frac(x):
    return str(Fraction(x))


def _sym_json(cfg, v):
    return {"terms": v.to_json(), "text": str(v), "numeric": float(v.numeric(cfg.precision))}


def _set_threads(n):
    if n:
        import numba

        from . import sampler  # noqa: F401  (selects the threading layer first)

        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


def _substitute_g(text, g):
    if g is None:
        if "g" in text.replace("-", ""):
            raise StratumParseError(f"{text!r} needs --g")
        return text

    def repl(m):
        coeff = int(m.group(1)) if m.group(1) else 1
        return str(coeff * g)

    return re.sub(r"(\d*)g", repl, text)


def _eval_orders(text):
    """Evaluate arithmetic like ``4-2`` inside a stratum string."""

    def fix(item):
        base, caret, mult = item.partition("^")
        base = base.strip("()")
        mult = mult.strip("()")
        if not re.fullmatch(r"[-+\d]+", base) or (mult and not re.fullmatch(r"[-+\d]+", mult)):
            raise StratumParseError(f"bad entry {item!r}")
        b = _arith(base)
        return f"{b}^{_arith(mult)}" if caret else str(b)

    m = re.fullmatch(r"\s*([HQ])\((.*)\)\s*", text)
    if not m:
        raise StratumParseError(f"cannot parse stratum {text!r}")
    items = _split_top(m.group(2))
    return f"{m.group(1)}({','.join(fix(i) for i in items)})"


def _split_top(body):
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur:
        out.append(cur)
    return out


def _arith(expr):
    tokens = re.findall(r"[+-]?\d+", expr)
    if "".join(tokens) != expr:
        raise StratumParseError(f"bad expression {expr!r}")
    return sum(int(t) for t in tokens)


# commands --------------------------------------------------------------------

def cmd_diagrams(cfg):
    from .diagrams import diagrams_of_stratum
    from .symbolic import SymbolicValue

    s = parse_stratum(cfg.stratum)
    if any(m == 0 for m in s.orders):
        if str(s) == "H(0)":
            return {"stratum": "H(0)", "rows": [], "total": _sym_json(cfg, SymbolicValue()),
                    "note": "the torus has no cone point; its single cylinder has no diagram"}
        raise Unsupported("strata with marked points are not supported")
    ds = diagrams_of_stratum(s)
    rows = [d.to_dict() for d in ds]
    total = SymbolicValue()
    for d in ds:
        total = total + d.contribution()
    return {"stratum": str(s), "rows": rows, "total": _sym_json(cfg, total)}


def _table_rows(dim):
    from .constants import TABLE

    grouped = {}
    for row in TABLE[dim]:
        grouped.setdefault(row.stratum, []).append(row)
    return grouped


def cmd_table(cfg):
    from .constants import stratum_rows
    from .sampler import pk_random
    from .volumes import c1_total_quadratic

    dim = cfg.extra["dim"]
    merged = stratum_rows(dim)
    samples = cfg.samples or 20_000
    walk = cfg.walk or 500
    grid = cfg.grid or 64
    out = []
    for name, rows in _table_rows(dim).items():
        entry = {"stratum": name, "components": [r.component for r in rows if r.component]}
        try:
            c1 = c1_total_quadratic(name)
            r, d = c1.as_zeta_multiple()
            entry["r"] = _frac(r)
            entry["zeta"] = d
            st = pk_random(name, samples=samples, walk_len=walk, L=grid, seed=cfg.seed)
            kmax = max(st.histogram)
            entry["frequencies"] = [st.proportion(k) for k in range(1, kmax + 1)]
            entry["p1_stderr"] = st.stderr(1)
            # c1 counts every component while the frequencies come from one,
            # so their ratio is not a volume when the stratum is disconnected
            split = several_components(name)
            vol = None if split else float(c1) / st.proportion(1)
            entry["volume_estimate"] = vol
            exact = merged[name][1]
            if exact is not None:
                coeff, power = exact
                entry["exact_volume"] = {"coeff": _frac(coeff), "pi": power,
                                         "numeric": float(coeff) * math.pi ** power}
                entry["volume_estimate_pi_coeff"] = None if split else vol / math.pi ** power
            if split:
                entry["note"] = ("frequencies sampled in the Rauzy class of one component; "
                                 "no volume estimate for a disconnected stratum")
        except BudgetExceeded as exc:
            entry["error"] = f"budget exceeded: {exc}"
        out.append(entry)
    return {"dim": dim, "samples": samples, "walk": walk, "grid": grid, "rows": out}


def cmd_c1(cfg):
    from .volumes import c1_bounds, c1_total_abelian, c1_total_quadratic

    s = parse_stratum(cfg.stratum)
    if any(m == 0 for m in s.orders):
        raise Unsupported("strata with marked points are not supported")
    if s.is_abelian:
        c1 = c1_total_abelian(s)
        lo, hi = c1_bounds(s)
        return {"stratum": str(s), "c1": _sym_json(cfg, c1), "lower_bound": _sym_json(cfg, lo),
                "upper_bound": _sym_json(cfg, hi)}
    return {"stratum": str(s), "c1": _sym_json(cfg, c1_total_quadratic(s))}


def cmd_frobenius(cfg):
    from .frobenius import minimal_count, principal_count, weighted_one_cyl_count
    from .volumes import c1_from_count, c1_minimal, c1_principal, c1_total_abelian

    g = cfg.extra.get("g")
    s = parse_stratum(_eval_orders(_substitute_g(cfg.stratum, g)))
    if not s.is_abelian or any(m == 0 for m in s.orders):
        raise Unsupported("the character formula applies to Abelian strata without marked points")
    count = weighted_one_cyl_count(s)
    c1 = c1_total_abelian(s)
    out = {"stratum": str(s), "weighted_count": _frac(count), "c1": _sym_json(cfg, c1),
           "c1_from_count": _sym_json(cfg, c1_from_count(s, count))}
    gg = s.genus
    if s.orders == (2 * gg - 2,):
        out["closed_form"] = {"weighted_count": _frac(minimal_count(gg)),
                              "c1": _sym_json(cfg, c1_minimal(gg))}
        out["equal"] = minimal_count(gg) == count and c1_minimal(gg) == c1
    elif s.orders == (1,) * (2 * gg - 2):
        out["closed_form"] = {"weighted_count": _frac(principal_count(gg)),
                              "c1": _sym_json(cfg, c1_principal(gg))}
        out["equal"] = principal_count(gg) == count and c1_principal(gg) == c1
    return out


def cmd_genfun(cfg):
    from .genfun import abelian_F, quadratic_F

    if cfg.extra.get("abelian") is not None:
        n = cfg.extra["abelian"]
        if n < 1:
            raise Unsupported("N must be positive")
        f, name = abelian_F(n), f"F_{n}"
    else:
        l, m, n = cfg.extra["quadratic"]
        if l < 0 or m < 1 or n < 1:
            raise Unsupported("need l >= 0 and m, n >= 1")
        f, name = quadratic_F(l, m, n), f"F_{{{l},{m},{n}}}"
    return {"name": name, "polynomial": str(f), "terms": f.to_json()}


def cmd_enumerate(cfg):
    from .origami import cumulative, enumerate_sts, h2_census, volume_fit

    s = parse_stratum(cfg.stratum)
    n_max = cfg.max_squares or 8
    method = cfg.extra.get("method", "brute")
    if method == "diagrams":
        if str(s) != "H(2)":
            raise Unsupported("the diagram census is implemented for H(2) only")
        c = h2_census(n_max)
        census = {}
        for N in range(1, n_max + 1):
            for k, val in enumerate(c[N], start=1):
                if val:
                    census[(N, k)] = val
    else:
        if not s.is_abelian:
            raise Unsupported("square-tiled enumeration covers Abelian strata only")
        census = {key: Fraction(v) for key, v in enumerate_sts(s, n_max).items()}
    rows = [{"N": N, "cylinders": k, "count": _frac(v)} for (N, k), v in sorted(census.items())]
    per_n = [0.0] * (n_max + 1)
    for (N, k), v in census.items():
        per_n[N] += float(v)
    cum = cumulative(per_n)
    out = {"stratum": str(s), "method": method, "rows": rows,
           "cumulative": [float(x) for x in cum[1:]]}
    if n_max >= 8 and cum[-1] > 0:
        c, resid = volume_fit(cum, s.dimension)
        out["volume_fit"] = {"c": c, "relative_residual": resid}
    return out


def cmd_volume_estimate(cfg):
    from .constants import ABELIAN_VOLUMES, stratum_rows
    from .sampler import DEFAULT_GRID, DEFAULT_SAMPLES, DEFAULT_WALK, pk_random
    from .volumes import c1_total_abelian, c1_total_quadratic, estimate_volume

    s = parse_stratum(cfg.stratum)
    if any(m == 0 for m in s.orders):
        raise Unsupported("strata with marked points are not supported")
    if several_components(s):
        raise Unsupported(f"{s} has several connected components; the sampler reaches only one")
    c1 = c1_total_abelian(s) if s.is_abelian else c1_total_quadratic(s)
    st = pk_random(s, samples=cfg.samples or DEFAULT_SAMPLES, walk_len=cfg.walk or DEFAULT_WALK,
                   L=cfg.grid or DEFAULT_GRID, seed=cfg.seed)
    p1, err = st.proportion(1), st.stderr(1)
    vol, vol_err = estimate_volume(c1, p1, err)
    d = s.dimension
    power = d if d % 2 == 0 else d - 1
    known = dict((k, v[1]) for k, v in stratum_rows().items())
    known.update(ABELIAN_VOLUMES)
    exact = known.get(str(s))
    if exact is not None:
        power = exact[1]
    out = {"stratum": str(s), "c1": _sym_json(cfg, c1), "p1_hat": p1, "stderr": err,
           "volume_estimate": vol, "volume_stderr": vol_err,
           "pi_power_form": {"coeff": vol / math.pi ** power, "pi": power},
           "statistics": st.to_dict()}
    if exact is not None:
        out["exact_volume"] = {"coeff": _frac(exact[0]), "pi": exact[1],
                               "numeric": float(exact[0]) * math.pi ** exact[1]}
    return out


COMMANDS = {
    "diagrams": cmd_diagrams, "table": cmd_table, "c1": cmd_c1,
    "frobenius": cmd_frobenius, "genfun": cmd_genfun, "enumerate": cmd_enumerate,
    "volume-estimate": cmd_volume_estimate,
}


# output ----------------------------------------------------------------------

def _blank(value):
    return "" if value is None else value


def _tsv_rows(command, res):
    if command == "diagrams":
        head = ["canonical_rep", "symmetry_order", "l", "m", "n", "coeff", "zeta"]
        body = [[r["canonical_rep"], r["symmetry_order"], r.get("l", ""), r.get("m", ""),
                 r.get("n", ""), r["contribution"]["coeff"], r["contribution"]["zeta"]]
                for r in res["rows"]]
        return head, body
    if command == "table":
        head = ["stratum", "r", "zeta", "frequencies", "volume_estimate",
                "volume_estimate_pi_coeff", "exact_volume"]
        body = []
        for r in res["rows"]:
            ex = r.get("exact_volume")
            body.append([r["stratum"], r.get("r", ""), r.get("zeta", ""),
                         ":".join(f"{x:.4f}" for x in r.get("frequencies", [])),
                         _blank(r.get("volume_estimate", r.get("error", ""))),
                         _blank(r.get("volume_estimate_pi_coeff", "")),
                         f"{ex['coeff']}*pi^{ex['pi']}" if ex else ""])
        return head, body
    if command == "enumerate":
        return ["N", "cylinders", "count"], [[r["N"], r["cylinders"], r["count"]] for r in res["rows"]]
    if command == "genfun":
        return ["coeff", "monomial"], [[t["coeff"], t["monomial"]] for t in res["terms"]]
    if command == "volume-estimate":
        h = res["statistics"]["histogram"]
        return ["cylinders", "count", "proportion"], [
            [k, v, res["statistics"]["proportions"][k]] for k, v in h.items()]
    flat = {k: (v["text"] if isinstance(v, dict) and "text" in v else v) for k, v in res.items()}
    return ["key", "value"], [[k, json.dumps(v) if isinstance(v, (dict, list)) else v]
                              for k, v in flat.items()]


def _text(command, res):
    lines = []
    if command == "diagrams":
        lines.append(f"{'diagram':<40} {'|Gamma|':>7} {'l,m,n':>8}  contribution")
        for r in res["rows"]:
            lmn = f"{r['l']},{r['m']},{r['n']}" if "l" in r else "-"
            c = r["contribution"]
            lines.append(f"{r['canonical_rep']:<40} {r['symmetry_order']:>7} {lmn:>8}  "
                         f"{c['coeff']} * zeta({c['zeta']})")
        lines.append(f"total c1 = {res['total']['text']}")
        if "note" in res:
            lines.append(res["note"])
        return "\n".join(lines)
    if command == "table":
        lines.append(f"{'stratum':<14} {'r':>8}  {'frequencies':<26} {'estimate':>10}  exact")
        for r in res["rows"]:
            if "error" in r:
                lines.append(f"{r['stratum']:<14} {r['error']}")
                continue
            fr = ":".join(f"{x:.4f}" for x in r["frequencies"])
            ex = r.get("exact_volume")
            exs = f"{ex['coeff']} pi^{ex['pi']}" if ex else "-"
            if r["volume_estimate"] is None:
                est = "-"
            elif ex:
                est = f"{r['volume_estimate_pi_coeff']:.4f}"
            else:
                est = f"{r['volume_estimate']:.4f}"
            lines.append(f"{r['stratum']:<14} {r['r']:>8}  {fr:<26} {est:>10}  {exs}")
        return "\n".join(lines)
    if command == "genfun":
        return f"{res['name']} = {res['polynomial']}"
    if command == "enumerate":
        lines.append("N\tcylinders\tcount")
        lines.extend(f"{r['N']}\t{r['cylinders']}\t{r['count']}" for r in res["rows"])
        if "volume_fit" in res:
            lines.append(f"volume fit: c = {res['volume_fit']['c']:.6f}")
        return "\n".join(lines)
    for k, v in res.items():
        if isinstance(v, dict) and "text" in v:
            v = v["text"]
        elif isinstance(v, dict) and k == "statistics":
            v = json.dumps(v["proportions"])
        elif isinstance(v, (dict, list)):
            v = json.dumps(v)
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def render(cfg, res):
    conf = asdict(cfg)
    if cfg.format == "json":
        return json.dumps({"config": conf, "result": res}, indent=2, default=str)
    if cfg.format == "tsv":
        head, body = _tsv_rows(cfg.command, res)
        out = ["# config: " + json.dumps(conf, default=str), "\t".join(head)]
        out.extend("\t".join(str(x) for x in row) for row in body)
        return "\n".join(out)
    return "# config: " + json.dumps(conf, default=str) + "\n" + _text(cfg.command, res)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    extra = {}
    for key in ("dim", "g", "abelian", "quadratic", "method"):
        if hasattr(args, key):
            extra[key] = getattr(args, key)
    cfg = RunConfig(command=args.command, stratum=getattr(args, "stratum", None),
                    max_squares=args.max_squares, grid=args.grid, samples=args.samples,
                    walk=args.walk, seed=args.seed, format=args.format,
                    precision=args.precision, threads=args.threads, extra=extra)
    from .rauzy import RepresentativeNotFound

    try:
        _set_threads(cfg.threads)
        res = COMMANDS[cfg.command](cfg)
    except StratumParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (Unsupported, RepresentativeNotFound, NotImplementedError) as exc:
        print(f"error: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    print(render(cfg, res))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
