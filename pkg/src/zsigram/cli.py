"""Command-line front end: ``zsigram <command> [options]``.

Results are plain dicts rendered as an aligned text table (default), JSON
or CSV.  JSON output is deterministic: keys sorted, no timestamps, exact
values as strings, UTF-8, newline-terminated.
"""

import argparse
import csv
import io
import json
import random
import sys
from decimal import Decimal

from . import __version__
from .dynamics import (
    beta_levels, classify_orbit, critical_points, grand_orbit_partition, hom_resultant,
    is_exceptional, is_postcritically_finite, orbit,
)
from .errors import ParseError, ZsigramError
from .exact import FactorBudget
from .fields import QQ, field_by_name
from .heights import canonical_height, comparison_constant, naive_height
from .oracle import check_claim, preimage_poly, unramified_certificate
from .parse import parse_map, parse_point, parse_tpoly, parse_value, parse_xpoly
from .places import (
    Place, good_reduction, newton_polygon, newton_trace, separable_reduction,
)
from .ramification import (
    RunConfig, _max_height_critical, abc_check, bad_prime_set, check_hypotheses, lemma_sums,
    zsigmondy_report,
)

SCHEMA_VERSION = 1
COMMANDS = ("analyze", "orbit", "critical", "height", "reduction", "newton", "zsigmondy",
            "oracle-check", "abc-check", "lemma-sums")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ZsigramError(f"usage error: {message}")


# -- serialization helpers -----------------------------------------------------------

def _pt(K, x):
    return K.fmt(x)


def _dec(v, digits=None):
    if v is None:
        return None
    if digits is not None and isinstance(v, Decimal) and v == v.to_integral_value():
        return str(v.quantize(Decimal(1)))
    return str(v)


def _place(p):
    return {"place": str(p), "kind": p.kind, "status": p.status}


def _witness(K, w):
    return {
        "level": w.level,
        "place": str(w.place),
        "place_status": w.place.status,
        "alpha": _pt(K, w.alpha),
        "j": w.j,
        "beta_j": _pt(K, w.beta_j),
        "valuation": w.valuation,
        "mode": w.mode,
        "exclusions_checked": len(w.exclusions),
        "max_excluded_valuation": max((v for *_, v in w.exclusions), default=None),
        "grand_orbit_shortcut": [
            {"a": _pt(K, a), "b": _pt(K, b), "m": m, "n": n} for a, b, m, n in w.shortcut
        ],
        "certificate": None if w.certificate is None else K.fmt_ring(w.certificate),
    }


def _config_dict(args, cfg=None):
    out = {"field": args.field, "precision": args.precision, "format": args.format}
    if cfg is not None:
        out.update({
            "levels": cfg.levels, "trial_limit": cfg.trial_limit,
            "rho_iterations": cfg.rho_iterations, "step_bound": cfg.step_bound,
            "oracle_max": cfg.oracle_max, "grand_orbit_bound": cfg.grand_orbit_bound,
        })
    return out


def _lemma_rows(K, table):
    rows = []
    for r in table.rows:
        row = {
            "level": r.level,
            "scale": _dec(r.scale),
            "z_sum": _dec(r.z_sum),
            "z_ratio": _dec(r.ratio(r.z_sum)),
            "v1_sum": _dec(r.v1_sum),
            "v1_ratio": _dec(r.ratio(r.v1_sum)),
            "partial": ",".join(sorted(r.partial)) or "-",
        }
        for label in table.classes:
            row[f"y_sum{label}"] = _dec(r.y_sums[label])
            row[f"y_ratio{label}"] = _dec(r.ratio(r.y_sums[label]))
        rows.append(row)
    return rows


def report_to_dict(rep):
    K = rep.phi.field
    levels = []
    for r in rep.results:
        d = {"level": r.level, "status": r.status}
        if r.witness is not None:
            d["witness"] = _witness(K, r.witness)
            d["oracle"] = rep.oracle.get(r.level)
        if r.cofactors:
            d["unfactored"] = [str(c) for c in r.cofactors]
        levels.append(d)
    return {
        "map": rep.phi.to_str(),
        "beta": _pt(K, rep.beta),
        "hypotheses": rep.hypotheses,
        "beta_levels": {"t": rep.levels.t, "betas": [_pt(K, b) for b in rep.levels.betas]},
        "bad_set": {
            "places": [str(p) for p in rep.bad_set.places],
            "reasons": {str(p): list(v) for p, v in sorted(rep.bad_set.reasons.items())},
            "partial": rep.bad_set.partial,
        },
        "levels": levels,
        "cumulative": rep.cumulative,
        "oracle": {
            "statuses": {str(k): v for k, v in sorted(rep.oracle.items())},
            "direction": "exact unramified certificates below the level; "
                         "non-squarefree reduction and discriminant divisibility at it",
        },
        "lemma_sums": {
            "alpha": _pt(K, rep.lemma.alpha),
            "canonical_height": _dec(rep.lemma.height.value),
            "rows": _lemma_rows(K, rep.lemma),
        },
        "valid": rep.valid,
    }


# -- commands -----------------------------------------------------------------------

def _map(args):
    if not args.map:
        raise ZsigramError("usage error: --map is required")
    return parse_map(args.map, args.field).phi


def _budget_config(args):
    cfg = RunConfig(levels=args.levels, precision=args.precision, oracle_max=args.oracle_max,
                    step_bound=args.step_bound)
    if args.budget is not None:
        b = FactorBudget.from_int(args.budget)
        cfg.trial_limit, cfg.rho_iterations = b.trial_limit, b.rho_iterations
    return cfg


def _place_arg(args, K):
    if args.prime is None:
        raise ZsigramError("usage error: --prime is required")
    if K is QQ:
        try:
            return Place.prime(int(args.prime))
        except ValueError as e:
            raise ZsigramError(f"usage error: {e}") from None
    return Place.poly(parse_tpoly(args.prime))


def cmd_analyze(args):
    phi = _map(args)
    K = phi.field
    crit = critical_points(phi)
    pcf = is_postcritically_finite(phi, args.step_bound)
    out = {
        "map": phi.to_str(),
        "field": K.name,
        "degree": phi.degree,
        "polynomial": phi.is_polynomial(),
        "hom_resultant": K.fmt_ring(hom_resultant(phi)),
        "comparison_constant": _dec(comparison_constant(phi, args.precision)),
        "critical_points": [{"point": _pt(K, c), "multiplicity": m} for c, m in crit.points],
        "irrational_critical_factor": None if crit.all_rational() else crit.residual.to_str("x", "t"),
        "pcf": pcf.status,
    }
    if crit.all_rational():
        classes = grand_orbit_partition(phi, step_bound=args.step_bound)
        out["grand_orbits"] = [
            {"members": [_pt(K, m) for m in c.members], "classification": c.classification,
             "separation": c.separation} for c in classes
        ]
    if args.beta is not None:
        beta = parse_point(args.beta, args.field)
        out["beta"] = _pt(K, beta)
        out["exceptional"] = is_exceptional(phi, beta)
        if not out["exceptional"] and crit.all_rational():
            lv = beta_levels(phi, beta, args.step_bound)
            out["beta_levels"] = {"t": lv.t, "betas": [_pt(K, b) for b in lv.betas]}
            S = bad_prime_set(phi, lv, _budget_config(args).budget)
            out["bad_set"] = [str(p) for p in S.places]
    return out


def cmd_orbit(args):
    phi = _map(args)
    K = phi.field
    x = parse_point(args.point or "0", args.field)
    rec = classify_orbit(phi, x, args.steps)
    return {
        "map": phi.to_str(),
        "point": _pt(K, x),
        "orbit": [_pt(K, y) for y in orbit(phi, x, min(args.steps, len(rec.trajectory) - 1))],
        "classification": rec.classification,
        "tail": rec.tail,
        "period": rec.period,
        "certificate_index": rec.certificate_index,
    }


def cmd_critical(args):
    phi = _map(args)
    K = phi.field
    crit = critical_points(phi)
    rows = []
    for c, m in crit.points:
        rec = classify_orbit(phi, c, args.steps)
        rows.append({"point": _pt(K, c), "multiplicity": m,
                     "classification": rec.classification})
    pcf = is_postcritically_finite(phi, args.steps)
    return {
        "map": phi.to_str(),
        "rows": rows,
        "irrational_critical_factor": None if crit.all_rational() else crit.residual.to_str("x", "t"),
        "pcf": pcf.status,
    }


def cmd_height(args):
    phi = _map(args)
    K = phi.field
    x = parse_point(args.point or "0", args.field)
    est = canonical_height(phi, x, args.iterations, args.precision)
    return {
        "map": phi.to_str(),
        "point": _pt(K, x),
        "naive_height": _dec(naive_height(x, K, args.precision)),
        "canonical_height": _dec(est.value),
        "gap": _dec(est.gap),
        "iterations": est.iterations,
        "comparison_constant": _dec(comparison_constant(phi, args.precision)),
    }


def cmd_reduction(args):
    phi = _map(args)
    place = _place_arg(args, phi.field)
    good = good_reduction(phi, place)
    return {
        "map": phi.to_str(),
        "place": _place(place),
        "good_reduction": good,
        "separable_reduction": separable_reduction(phi, place) if good else None,
    }


def _polygon_dict(poly):
    return {
        "vertices": [[i, str(v)] for i, v in poly.vertices],
        "segments": [{"slope": str(s), "length": n} for s, n in poly.segments],
    }


def cmd_newton(args):
    if args.poly:
        f = parse_xpoly(args.poly, args.field)
        place = _place_arg(args, field_by_name(args.field))
        return {"poly": f.to_str("x", "t"), "place": str(place),
                **_polygon_dict(newton_polygon(f, place))}
    phi = _map(args)
    K = phi.field
    place = _place_arg(args, K)
    alpha = parse_point(args.alpha or "0", args.field)
    beta = parse_point(args.beta or "0", args.field)
    tr = newton_trace(phi, alpha, beta, args.level, place)
    if tr is None:
        raise ZsigramError("usage error: level too large or alpha = inf")
    return {"map": phi.to_str(), "alpha": _pt(K, alpha), "beta": _pt(K, beta),
            "level": args.level, "place": str(place), "ell": tr.ell,
            "first_segment_shape": tr.shape_ok, **_polygon_dict(tr.polygon)}


def cmd_zsigmondy(args):
    phi = _map(args)
    beta = parse_point(args.beta or "0", args.field)
    cfg = _budget_config(args)
    rep = zsigmondy_report(phi, beta, cfg)
    out = report_to_dict(rep)
    out["rows"] = [
        {"level": lv["level"], "status": lv["status"],
         "place": lv.get("witness", {}).get("place", "-"),
         "alpha": lv.get("witness", {}).get("alpha", "-"),
         "mode": lv.get("witness", {}).get("mode", "-"),
         "oracle": lv.get("oracle") or "-",
         "cumulative": c}
        for lv, c in zip(out["levels"], out["cumulative"])
    ]
    return out, cfg


def cmd_oracle_check(args):
    phi = _map(args)
    K = phi.field
    beta = parse_point(args.beta or "0", args.field)
    if args.prime is None:
        cfg = _budget_config(args)
        rep = zsigmondy_report(phi, beta, cfg)
        d = report_to_dict(rep)
        return {"map": phi.to_str(), "beta": _pt(K, beta),
                "statuses": d["oracle"]["statuses"], "valid": rep.valid}, cfg
    place = _place_arg(args, K)
    rows = []
    for m in range(1, args.level + 1):
        f = preimage_poly(phi, beta, m)
        rows.append({"level": m, "degree": f.poly.degree(), "squarefree": f.squarefree,
                     "unramified": unramified_certificate(f, place)})
    status = check_claim(phi, beta, args.level, place, args.mode)
    return {"map": phi.to_str(), "beta": _pt(K, beta), "place": str(place),
            "level": args.level, "status": status, "rows": rows}, None


def cmd_abc_check(args):
    if args.a is None or args.b is None:
        raise ZsigramError("usage error: --a and --b are required")
    a = parse_value(args.a, args.field)
    b = parse_value(args.b, args.field)
    c = parse_value(args.c, args.field) if args.c is not None else a + b
    K = field_by_name(args.field)
    try:
        res = abc_check(a, b, c, K)
    except ValueError as e:
        raise ZsigramError(f"usage error: {e}") from None
    return {"a": K.fmt(a), "b": K.fmt(b), "c": K.fmt(c),
            "height": _dec(res.height), "rad": _dec(res.rad),
            "holds": res.holds,
            "assertion": "h <= rad - 1 (Mason-Stothers)" if res.holds is not None
            else "none over Q (abc is conjectural)"}


def cmd_lemma_sums(args):
    phi = _map(args)
    K = phi.field
    beta = parse_point(args.beta or "0", args.field)
    cfg = _budget_config(args)
    _, classes = check_hypotheses(phi, beta, cfg)
    lv = beta_levels(phi, beta, cfg.step_bound)
    crit = critical_points(phi).point_list()
    if args.alpha is not None:
        alpha = parse_point(args.alpha, args.field)
    else:
        alpha = _max_height_critical(phi, crit, args.precision)
    table = lemma_sums(phi, alpha, lv, cfg.levels, cfg.budget, classes=classes,
                       precision=args.precision)
    return {"map": phi.to_str(), "beta": _pt(K, beta), "alpha": _pt(K, alpha),
            "canonical_height": _dec(table.height.value),
            "rows": _lemma_rows(K, table)}, cfg


HANDLERS = {
    "analyze": cmd_analyze, "orbit": cmd_orbit, "critical": cmd_critical,
    "height": cmd_height, "reduction": cmd_reduction, "newton": cmd_newton,
    "zsigmondy": cmd_zsigmondy, "oracle-check": cmd_oracle_check,
    "abc-check": cmd_abc_check, "lemma-sums": cmd_lemma_sums,
}


# -- rendering --------------------------------------------------------------------------

def _scalar(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return ", ".join(f"({_scalar(x)})" if isinstance(x, (list, tuple)) else _scalar(x)
                         for x in v) if v else "-"
    if isinstance(v, dict):
        return "; ".join(f"{k}={_scalar(x)}" for k, x in sorted(v.items()))
    return str(v)


def _short(text):
    # long decimals are kept in JSON; the table shows 12 significant digits
    if len(text) > 14 and text.replace(".", "", 1).replace("-", "", 1).isdigit():
        return f"{Decimal(text):.12g}"
    return text


def _table(rows):
    cols = list(rows[0])
    cells = [[_short(_scalar(r.get(c))) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return lines


def render_table(result):
    lines = []
    for k, v in result.items():
        if k in ("rows", "levels", "config", "schema_version", "tool_version", "command"):
            continue
        if k == "lemma_sums":
            continue
        lines.append(f"{k}: {_scalar(v)}")
    rows = result.get("rows")
    if rows:
        lines.append("")
        lines += _table(rows)
    lemma = result.get("lemma_sums")
    if lemma and lemma.get("rows"):
        lines.append("")
        lines.append(f"lemma sums (alpha = {lemma['alpha']}, canonical height "
                     f"{lemma['canonical_height']})")
        lines += _table(lemma["rows"])
    return "\n".join(lines) + "\n"


def render_csv(result):
    rows = result.get("rows")
    if not rows:
        raise ZsigramError("usage error: this command has no tabular output for csv")
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _scalar(v) if not isinstance(v, (str, int)) else v for k, v in r.items()})
    return buf.getvalue()


def render_json(result):
    return json.dumps(result, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


# -- entry point ---------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="zsigram", description="Ramification in preimage towers of rational maps.")
    p.add_argument("--version", action="version", version=f"zsigram {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--map")
    p.add_argument("--beta")
    p.add_argument("--field", choices=("Q", "Qt"), default="Q")
    p.add_argument("--levels", type=int, default=8)
    p.add_argument("--budget", type=int, help="factoring effort (trial bound and rho iterations)")
    p.add_argument("--oracle-max", type=int, dest="oracle_max")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--precision", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--point")
    p.add_argument("--alpha")
    p.add_argument("--prime", help="a prime over Q or a polynomial in t over Q(t)")
    p.add_argument("--poly", help="polynomial in x for the newton command")
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--mode", choices=("one-level", "two-level"), default="one-level")
    p.add_argument("--iterations", type=int, default=8)
    p.add_argument("--steps", type=int, default=64)
    p.add_argument("--step-bound", type=int, default=64, dest="step_bound")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--c")
    return p


def _check_bounds(args):
    for name in ("levels", "precision", "iterations", "steps", "step_bound", "level"):
        if getattr(args, name) < 1:
            raise ZsigramError(f"usage error: --{name.replace('_', '-')} must be positive")
    for name in ("budget", "oracle_max"):
        v = getattr(args, name)
        if v is not None and v < 1:
            raise ZsigramError(f"usage error: --{name.replace('_', '-')} must be positive")


def run(argv, stdout=None, stderr=None):
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        _check_bounds(args)
        random.seed(args.seed)
        out = HANDLERS[args.command](args)
        cfg = None
        if isinstance(out, tuple):
            out, cfg = out
        result = {"schema_version": SCHEMA_VERSION, "tool_version": __version__,
                  "command": args.command, "config": _config_dict(args, cfg)}
        result.update(out)
        if args.format == "json":
            text = render_json(result)
        elif args.format == "csv":
            text = render_csv(result)
        else:
            text = render_table(result)
        stdout.write(text)
        return 0
    except ParseError as e:
        stderr.write(f"zsigram: parse error: {e}\n")
        return e.exit_code
    except ZsigramError as e:
        stderr.write(f"zsigram: {e}\n")
        return e.exit_code
    except (ValueError, ZeroDivisionError) as e:
        stderr.write(f"zsigram: {e}\n")
        return 1


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
