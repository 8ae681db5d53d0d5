"""Batch command-line front end tying the whole toolkit together.

Subcommands: expand, angles, histogram, sandwich, bounds, congruences,
sieve, density, quadform, report.  Every artifact (CSV or JSON) carries the
id of the run manifest that produced it; the manifest id hashes the
command, its parameters, the tool version, and the content hashes of any
input files — never the timestamp — so identical invocations on identical
inputs yield byte-identical artifacts.  When an output file is written, a
`<name>.manifest.json` sidecar records the full manifest including wall
time and output content hashes.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage error.

Set TAUTOOLS_CACHE to a directory to checkpoint long coefficient
expansions in the binary table format; reruns resume from the checkpoint
when the request hash matches.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from .bounds import BOUND_KINDS, BoundContext, evaluate
from .density import (
    SIEVE_MODULUS,
    atomic_rules,
    certify_weight16_two_power_rule,
    check_rules,
    density_lower_bound,
    density_upper_bound_11a,
    DensityConfig,
    rule_table,
    rule_to_dict,
    serre_sieve,
    zero_bound_fn,
)
from .newforms import FORMS, build_angle_table, build_form, get_form_spec
from .qexp import load_binary, save_binary
from .quadform import (
    cusp_coeff,
    decomposition_check,
    eisenstein_coeff,
    f_alpha,
    get_quadform_spec,
    r_q_enumerate,
    r_q2_theta,
    thm19_check,
)
from .satotate import Interval, mu_st, sandwich_check

__all__ = ["main", "run", "cached_series", "build_manifest"]


# ---------------------------------------------------------------------------
# manifest plumbing


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def build_manifest(command: str, parameters: dict, input_paths=()) -> dict:
    """Run manifest with a deterministic id.

    The id hashes command, parameters, input-file content hashes and the
    tool version; wall time and timestamp are added by `finish_manifest`
    and deliberately excluded, so repeat runs share the id.
    """
    inputs = {os.path.basename(p): _sha256_file(p) for p in input_paths}
    ident = hashlib.sha256(_canonical({
        "command": command,
        "parameters": parameters,
        "input_hashes": inputs,
        "tool_version": __version__,
    }).encode()).hexdigest()[:16]
    return {
        "id": ident,
        "command": command,
        "parameters": parameters,
        "input_hashes": inputs,
        "tool_version": __version__,
        "outputs": [],
    }


def finish_manifest(manifest: dict, t0: float, out_paths=()) -> None:
    """Record timing plus output hashes and drop the sidecar file(s)."""
    manifest["wall_seconds"] = round(time.perf_counter() - t0, 6)
    manifest["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    manifest["outputs"] = [
        {"path": p, "sha256": _sha256_file(p),
         "bytes": os.path.getsize(p)}
        for p in out_paths
    ]
    for p in out_paths:
        with open(p + ".manifest.json", "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _emit_json(payload: dict, manifest: dict, t0: float, out: str | None) -> None:
    payload = dict(payload)
    payload["manifest"] = manifest["id"]
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        finish_manifest(manifest, t0, [out])
    else:
        sys.stdout.write(text)
        finish_manifest(manifest, t0)


def _emit_csv(lines, manifest: dict, t0: float, out: str | None) -> None:
    text = f"# manifest: {manifest['id']}\n" + "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        finish_manifest(manifest, t0, [out])
    else:
        sys.stdout.write(text)
        finish_manifest(manifest, t0)


# ---------------------------------------------------------------------------
# coefficient checkpointing


def cached_series(label: str, prec: int):
    """Build a form's expansion, checkpointing under TAUTOOLS_CACHE.

    The checkpoint file name embeds a hash of (label, prec, format
    version); a rerun with the same request resumes by loading it instead
    of recomputing.  Without the environment variable this is a plain
    build.
    """
    root = os.environ.get("TAUTOOLS_CACHE")
    if not root:
        return build_form(label, prec)
    key = hashlib.sha256(f"qx1:{label}:{prec}".encode()).hexdigest()[:16]
    path = os.path.join(root, f"{label}-{prec}-{key}.qx")
    if os.path.exists(path):
        f = load_binary(path)
        assert f.prec == prec, f"checkpoint {path} has prec {f.prec}"
        return f
    f = build_form(label, prec)
    os.makedirs(root, exist_ok=True)
    tmp = path + ".part"
    save_binary(f, tmp)
    os.replace(tmp, path)
    return f


# ---------------------------------------------------------------------------
# subcommands; each returns a process exit code


def cmd_expand(args) -> int:
    t0 = time.perf_counter()
    manifest = build_manifest("expand", {"form": args.form, "prec": args.prec})
    f = cached_series(args.form, args.prec)
    if args.json:
        _emit_json({"form": args.form, "prec": f.prec,
                    "coefficients": [str(c) for c in f.coeffs]},
                   manifest, t0, args.out)
        return 0
    lines = ["n,a_n"] + [f"{n},{c}" for n, c in enumerate(f.coeffs)]
    _emit_csv(lines, manifest, t0, args.out)
    return 0


def cmd_angles(args) -> int:
    t0 = time.perf_counter()
    manifest = build_manifest("angles", {"form": args.form, "xmax": args.xmax})
    table = build_angle_table(get_form_spec(args.form), args.xmax,
                              series=cached_series(args.form, args.xmax + 1))
    table.save_csv(args.out)
    # prepend the manifest reference; readers skip all '#' lines
    with open(args.out) as fh:
        body = fh.read()
    with open(args.out, "w") as fh:
        fh.write(f"# manifest: {manifest['id']}\n" + body)
    finish_manifest(manifest, t0, [args.out])
    if args.json:
        sys.stdout.write(_canonical({"rows": int(table.primes.size),
                                     "out": args.out,
                                     "manifest": manifest["id"]}) + "\n")
    return 0


def cmd_histogram(args) -> int:
    t0 = time.perf_counter()
    if args.bins < 1:
        raise ValueError("need at least one bin")
    manifest = build_manifest("histogram", {
        "form": args.form, "x": args.x, "bins": args.bins})
    x_max = 2 * args.x
    table = build_angle_table(get_form_spec(args.form), x_max,
                              series=cached_series(args.form, x_max + 1))
    window = (table.primes >= args.x) & (table.primes <= 2 * args.x)
    edges = np.linspace(0.0, math.pi, args.bins + 1)
    counts, _ = np.histogram(table.thetas[window], bins=edges)
    lines = ["bin_lo,bin_hi,count,mu_st_mass"]
    for i in range(args.bins):
        lo, hi = float(edges[i]), float(edges[i + 1])
        mass = mu_st(Interval(lo, hi))
        lines.append(f"{lo:.17g},{hi:.17g},{int(counts[i])},{mass:.17g}")
    _emit_csv(lines, manifest, t0, args.out)
    return 0


def cmd_sandwich(args) -> int:
    t0 = time.perf_counter()
    manifest = build_manifest("sandwich", {
        "form": args.form, "x": args.x, "alpha": args.alpha,
        "beta": args.beta, "delta": args.delta, "ntrunc": args.ntrunc})
    x_max = int(2 * args.x)
    table = build_angle_table(get_form_spec(args.form), x_max,
                              series=cached_series(args.form, x_max + 1))
    iv = Interval(args.alpha, args.beta)
    try:
        report = sandwich_check(args.x, iv, args.delta, args.ntrunc, table)
        report["ok"] = True
        code = 0
    except AssertionError as exc:
        report = {"x": args.x, "interval": (iv.alpha, iv.beta),
                  "delta": args.delta, "n_trunc": args.ntrunc,
                  "ok": False, "detail": str(exc)}
        code = 1
    report["precision"] = "float64"
    _emit_json(report, manifest, t0, args.out)
    return code


def _bound_context(args) -> BoundContext:
    fields = {"level": 1, "weight": 12, "x": 1e17}
    if isinstance(args.json, str):
        with open(args.json) as fh:
            loaded = json.load(fh)
        allowed = {"level", "weight", "x", "alpha", "beta", "sym_power",
                   "zero_height", "smoothing_width"}
        unknown = set(loaded) - allowed
        if unknown:
            raise ValueError(f"unknown context fields: {sorted(unknown)}")
        fields.update(loaded)
    for flag, name in (("N", "level"), ("k", "weight"), ("x", "x"),
                       ("alpha", "alpha"), ("beta", "beta"),
                       ("sym_power", "sym_power"),
                       ("zero_height", "zero_height"),
                       ("smoothing_width", "smoothing_width")):
        v = getattr(args, flag)
        if v is not None:
            fields[name] = v
    alpha = fields.pop("alpha", None)
    beta = fields.pop("beta", None)
    if (alpha is None) != (beta is None):
        raise ValueError("--alpha and --beta must be given together")
    interval = Interval(alpha, beta) if alpha is not None else None
    return BoundContext(level=int(fields["level"]), weight=int(fields["weight"]),
                        x=float(fields["x"]), interval=interval,
                        sym_power=fields.get("sym_power"),
                        zero_height=fields.get("zero_height"),
                        smoothing_width=fields.get("smoothing_width"))


def cmd_bounds(args) -> int:
    t0 = time.perf_counter()
    inputs = [args.json] if isinstance(args.json, str) else []
    ctx = _bound_context(args)
    manifest = build_manifest("bounds", {
        "which": args.which, "level": ctx.level, "weight": ctx.weight,
        "x": ctx.x, "interval": None if ctx.interval is None
        else (ctx.interval.alpha, ctx.interval.beta),
        "sym_power": ctx.sym_power, "zero_height": ctx.zero_height,
        "dps": args.dps}, inputs)
    report = evaluate(args.which, ctx, dps=args.dps)
    if args.dps is not None:
        report["value"] = str(report["value"])
        report["terms"] = [{"name": t["name"], "value": str(t["value"])}
                           for t in report["terms"]]
        report["precision"] = f"decimal:{args.dps}"
    else:
        report["precision"] = "float64"
    _emit_json(report, manifest, t0, args.out)
    return 0


def cmd_congruences(args) -> int:
    t0 = time.perf_counter()
    manifest = build_manifest("congruences", {
        "weight": args.weight, "prec": args.prec, "certify": args.certify})
    if args.certify and args.weight != 16:
        raise ValueError("--certify applies to weight 16 only")
    violations = check_rules(args.weight, args.prec)
    failed = {v["rule"] for v in violations}
    cert = certify_weight16_two_power_rule() if args.certify else None

    outs = []
    if args.rules_out:
        with open(args.rules_out, "w") as fh:
            json.dump({"weight": args.weight, "manifest": manifest["id"],
                       "rules": [rule_to_dict(r) for r in rule_table(args.weight)]},
                      fh, indent=2, sort_keys=True)
            fh.write("\n")
        outs.append(args.rules_out)

    code = 1 if violations or (cert and not cert["certified"]) else 0
    if args.json:
        payload = {
            "weight": args.weight,
            "prec": args.prec,
            "rules_checked": len(atomic_rules(args.weight)),
            "violations": violations,
            "ok": code == 0,
        }
        if cert:
            payload["certificate"] = cert
        payload["manifest"] = manifest["id"]
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
            outs.append(args.out)
        else:
            sys.stdout.write(text)
    else:
        for rule in atomic_rules(args.weight):
            flag = "FAIL" if rule.describe() in failed else "PASS"
            print(f"[{flag}] {rule.describe()}")
        if cert:
            flag = "PASS" if cert["certified"] else "FAIL"
            print(f"[{flag}] weight-16 two-power rule certified complete "
                  f"through Sturm bound {cert['sturm_bound']}")
    finish_manifest(manifest, t0, outs)
    return code


def cmd_sieve(args) -> int:
    t0 = time.perf_counter()
    threads = args.threads or os.cpu_count() or 1
    manifest = build_manifest("sieve", {"hmax": args.hmax,
                                        "threads": threads})
    primes = serre_sieve(args.hmax, threads=threads)
    if args.json:
        _emit_json({"hmax": args.hmax, "count": len(primes),
                    "primes": [{"h": (p + 1) // SIEVE_MODULUS, "p": str(p)}
                               for p in primes]},
                   manifest, t0, args.out)
        return 0
    lines = ["h,p"] + [f"{(p + 1) // SIEVE_MODULUS},{p}" for p in primes]
    _emit_csv(lines, manifest, t0, args.out)
    return 0


def _parse_fraction(text: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def cmd_density(args) -> int:
    t0 = time.perf_counter()
    spec = get_form_spec(args.form)
    inputs = [args.zero_primes] if args.zero_primes else []
    zeros = ()
    if args.zero_primes:
        with open(args.zero_primes) as fh:
            zeros = tuple(int(line) for line in fh if line.strip())
    if args.alpha is not None:
        alpha = _parse_fraction(args.alpha)
    else:
        alpha = Fraction(14, 15) if args.form == "11a" else Fraction(1)
    manifest = build_manifest("density", {
        "form": args.form, "x0": args.x0, "prime_count": args.prime_count,
        "prime_min": args.prime_min,
        "alpha": [str(alpha.numerator), str(alpha.denominator)]}, inputs)
    config = DensityConfig(x0=args.x0,
                           bound_fn=zero_bound_fn(spec.level, spec.weight),
                           zero_primes=zeros,
                           prime_count=args.prime_count,
                           prime_min=args.prime_min,
                           alpha=alpha)
    report = density_lower_bound(config, details=True)
    if args.form == "11a":
        report["upper_bound"] = density_upper_bound_11a(zeros, alpha=alpha)
    report["precision"] = "float64"
    _emit_json(report, manifest, t0, args.out)
    return 0


def cmd_quadform(args) -> int:
    t0 = time.perf_counter()
    manifest = build_manifest("quadform", {
        "form": args.form, "nmax": args.nmax, "check": args.check,
        "alpha_max": args.alpha_max})
    payload: dict = {"form": args.form, "check": args.check}
    code = 0

    counts = None
    if args.check == "decomposition" or args.out:
        counts = (r_q2_theta(args.nmax) if args.form == "q2"
                  else r_q_enumerate(get_quadform_spec(args.form), args.nmax))

    if args.check == "decomposition":
        ok, first = decomposition_check(args.form, args.nmax, counts=counts)
        payload.update(nmax=args.nmax, ok=ok, first_failure=first)
        code = 0 if ok else 1
    elif args.check == "thm19":
        if args.form != "q2":
            raise ValueError("the equivalence scan is specific to form q2")
        report = thm19_check(args.nmax)
        payload.update(report)
        code = 0 if report["ok"] and report["factorization_ok"] else 1
    elif args.check == "falpha":
        seq = f_alpha(args.alpha_max)
        payload.update(
            alpha_max=args.alpha_max,
            nonvanishing=seq.nonvanishing,
            recurrence_failures=list(seq.recurrence_failures),
            values_head=[str(v) for v in seq.values[:8]],
        )
        code = 0 if seq.nonvanishing else 1

    if args.out:
        lines = ["n,r_Q,eis_num,eis_den,cusp_num,cusp_den"]
        for n in range(args.nmax + 1):
            e = eisenstein_coeff(args.form, n)
            c = cusp_coeff(args.form, n)
            lines.append(f"{n},{counts[n]},{e.numerator},{e.denominator},"
                         f"{c.numerator},{c.denominator}")
        text = f"# manifest: {manifest['id']}\n" + "\n".join(lines) + "\n"
        with open(args.out, "w") as fh:
            fh.write(text)
        payload["table"] = args.out

    payload["manifest"] = manifest["id"]
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    finish_manifest(manifest, t0, [args.out] if args.out else [])
    return code


def cmd_report(args) -> int:
    from . import acceptance  # heavy import, deferred

    t0 = time.perf_counter()
    if args.suite != "acceptance":
        raise ValueError(f"unknown suite {args.suite!r}")
    idents = args.only if args.only else None
    manifest = build_manifest("report", {"suite": args.suite,
                                         "only": idents})
    reports = acceptance.run_all(idents)
    all_ok = all(r["ok"] for r in reports)
    if args.json:
        _emit_json({"suite": args.suite, "ok": all_ok,
                    "criteria": [{k: r[k] for k in ("ident", "title", "ok",
                                                    "seconds")}
                                 for r in reports]},
                   manifest, t0, args.out)
    else:
        for r in reports:
            flag = "PASS" if r["ok"] else "FAIL"
            print(f"criterion {r['ident']:2d} [{flag}] {r['title']} "
                  f"({r['seconds']:.1f}s)")
        print(f"suite {'PASS' if all_ok else 'FAIL'}: "
              f"{sum(r['ok'] for r in reports)}/{len(reports)} criteria")
        finish_manifest(manifest, t0)
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# parser


def _add_json_flag(p: argparse.ArgumentParser) -> None:
    # plain `--json` toggles machine output; `--json FILE` (bounds) also
    # names a context file
    p.add_argument("--json", nargs="?", const=True, default=False,
                   help="emit machine-readable JSON; on `bounds`, an "
                        "optional argument names a context JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tautools",
        description="coefficient tables, angle statistics, explicit bounds, "
                    "congruence suites, nonvanishing densities, and "
                    "quadratic-form checks",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="emit a form's coefficient table")
    p.add_argument("--form", required=True, choices=sorted(FORMS))
    p.add_argument("--prec", required=True, type=int)
    p.add_argument("--out")
    _add_json_flag(p)
    p.set_defaults(fn=cmd_expand)

    p = sub.add_parser("angles", help="tabulate Hecke angles to a CSV")
    p.add_argument("--form", required=True, choices=sorted(FORMS))
    p.add_argument("--xmax", required=True, type=int)
    p.add_argument("--out", required=True)
    _add_json_flag(p)
    p.set_defaults(fn=cmd_angles)

    p = sub.add_parser("histogram",
                       help="angle histogram over [x, 2x] with limit masses")
    p.add_argument("--form", required=True, choices=sorted(FORMS))
    p.add_argument("--x", required=True, type=int)
    p.add_argument("--bins", required=True, type=int)
    p.add_argument("--out")
    _add_json_flag(p)
    p.set_defaults(fn=cmd_histogram)

    p = sub.add_parser("sandwich",
                       help="two-sided smoothed bracket for one window")
    p.add_argument("--form", required=True, choices=sorted(FORMS))
    p.add_argument("--x", required=True, type=float)
    p.add_argument("--alpha", required=True, type=float)
    p.add_argument("--beta", required=True, type=float)
    p.add_argument("--delta", required=True, type=float)
    p.add_argument("--ntrunc", required=True, type=int)
    p.add_argument("--out")
    _add_json_flag(p)
    p.set_defaults(fn=cmd_sandwich)

    p = sub.add_parser("bounds", help="evaluate one explicit bound")
    p.add_argument("--which", required=True, choices=BOUND_KINDS)
    p.add_argument("--N", type=int, help="level")
    p.add_argument("--k", type=int, help="weight")
    p.add_argument("--x", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--sym-power", dest="sym_power", type=int)
    p.add_argument("--zero-height", dest="zero_height", type=float)
    p.add_argument("--smoothing-width", dest="smoothing_width", type=float)
    p.add_argument("--dps", type=int,
                   help="decimal digits; default is float64")
    p.add_argument("--out")
    _add_json_flag(p)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("congruences",
                       help="check one weight's coefficient congruences")
    p.add_argument("--weight", required=True, type=int,
                   choices=(16, 18, 20, 22, 26))
    p.add_argument("--prec", required=True, type=int)
    p.add_argument("--certify", action="store_true",
                   help="also run the weight-16 completeness certificate")
    p.add_argument("--rules-out", dest="rules_out",
                   help="export the rule table as JSON")
    p.add_argument("--out")
    _add_json_flag(p)
    p.set_defaults(fn=cmd_congruences)

    p = sub.add_parser("sieve",
                       help="candidate primes for a weight-12 coefficient zero")
    p.add_argument("--hmax", required=True, type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--out")
    _add_json_flag(p)
    p.set_defaults(fn=cmd_sieve)

    p = sub.add_parser("density",
                       help="certified nonvanishing-density bounds")
    p.add_argument("--form", required=True, choices=sorted(FORMS))
    p.add_argument("--x0", required=True, type=float)
    p.add_argument("--prime-count", dest="prime_count", type=int)
    p.add_argument("--prime-min", dest="prime_min", type=int)
    p.add_argument("--zero-primes", dest="zero_primes",
                   help="file with one verified zero-prime per line")
    p.add_argument("--alpha", help="rational multiplier, e.g. 14/15")
    p.add_argument("--out")
    _add_json_flag(p)
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("quadform",
                       help="theta decompositions and related certificates")
    p.add_argument("--form", required=True, choices=("q1", "q2"))
    p.add_argument("--nmax", type=int, default=1000)
    p.add_argument("--check", default="decomposition",
                   choices=("decomposition", "thm19", "falpha"))
    p.add_argument("--alpha-max", dest="alpha_max", type=int, default=300)
    p.add_argument("--out", help="write the representation table CSV here")
    _add_json_flag(p)
    p.set_defaults(fn=cmd_quadform)

    p = sub.add_parser("report", help="run an aggregate check suite")
    p.add_argument("--suite", default="acceptance")
    p.add_argument("--only", type=int, action="append",
                   help="restrict to one criterion id (repeatable)")
    p.add_argument("--out")
    _add_json_flag(p)
    p.set_defaults(fn=cmd_report)

    return parser


def run(argv=None) -> int:
    """Parse argv and execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
