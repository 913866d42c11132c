"""Command line: ``prudent series|asym|sample|validate``.

Every command starts its output with a metadata header (tool version, the
parsed options, and for sampling the random generator), as ``#`` comment
lines for text and csv, and as a ``metadata`` object for json.  Nothing in
the header depends on the clock, so identical commands give identical bytes.
"""

import argparse
import json
import math
import os
import secrets
import sys
import time
from pathlib import Path

from . import __version__

DEFAULT_SEED = 1
SERIES_CLASSES = ("bargraph", "pp2", "pp3", "pp-all", "one-sided", "R")
SERIES_CAPS = {"bargraph": 600, "pp2": 600, "one-sided": 100000, "R": 250, "pp3": 250,
               "pp-all": 40}
SAMPLE_CLASSES = ("two", "three", "all")


def order_cap(cls):
    """Truncation cap for a series class; ``PP_MAX_ORDER`` may raise it."""
    cap = SERIES_CAPS[cls]
    env = os.environ.get("PP_MAX_ORDER")
    if env:
        try:
            cap = max(cap, int(env))
        except ValueError:
            raise SystemExit(f"PP_MAX_ORDER must be an integer, got {env!r}")
    return cap


def metadata(args, **extra):
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
    meta = {"tool": "prudent", "version": __version__, "command": args.command, "config": cfg}
    meta.update(extra)
    return meta


def _header_lines(meta):
    return [f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in meta.items()]


def _fmt_float(x):
    return f"{x:.16g}"


def _fmt_value(v):
    if isinstance(v, float):
        return _fmt_float(v)
    if isinstance(v, list):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    return str(v)


# -- series ----------------------------------------------------------------------

def series_coefficients(cls, N):
    from . import closed_forms as cf
    if cls == "bargraph":
        return cf.bargraph_one(N).scalars()
    if cls == "pp2":
        return cf.pp2_gf(N).scalars()
    if cls == "pp3":
        return cf.pp3_gf(N).scalars()
    if cls == "R":
        return cf.R_one(N).scalars()
    if cls == "one-sided":
        return cf.one_sided_gf(N).scalars()
    if cls == "pp-all":
        from .funceq_solver import pp_all_gf
        return pp_all_gf(max(N, 2)).scalars()[:N + 1]
    raise ValueError(cls)


def cmd_series(args, out):
    N = args.order
    if N < 0:
        raise SystemExit("order must be >= 0")
    cap = order_cap(args.cls)
    if N > cap:
        raise SystemExit(f"order {N} exceeds the cap {cap} for {args.cls} (set PP_MAX_ORDER to raise it)")
    coeffs = [int(c) for c in series_coefficients(args.cls, N)]
    meta = metadata(args)
    if args.format == "json":
        out.write(json.dumps({"metadata": meta, "coefficients": coeffs}) + "\n")
    elif args.format == "csv":
        out.write("\n".join(_header_lines(meta)) + "\n")
        out.write(",".join(str(c) for c in coeffs) + "\n")
    else:
        out.write("\n".join(_header_lines(meta)) + "\n")
        for c in coeffs:
            out.write(f"{c}\n")
    return 0


# -- asym ------------------------------------------------------------------------

def _constant_record(c):
    return {"name": c.name, "value": c.value, "residual": c.residual,
            "bracket": [c.bracket[0], c.bracket[1]]}


def cmd_asym(args, out):
    from . import asymptotics as asy
    records = []
    if args.which == "rho":
        c = asy.rho()
        records.append(_constant_record(c))
        records.append({"name": "1/sqrt(rho)", "value": float(1 / math.sqrt(c.value))})
        qr, inv = asy.q_at_rho()
        records.append({"name": "q(rho)", "value": float(qr),
                        "residual": float(abs(qr - inv))})
    elif args.which == "A":
        records.append(_constant_record(asy.amplitude_A()))
    elif args.which == "sigma":
        c = asy.sigma()
        records.append(_constant_record(asy.tau()))
        records.append(_constant_record(c))
        records.append({"name": "1/sqrt(sigma)", "value": float(1 / math.sqrt(c.value))})
    elif args.which == "sigma-n":
        if args.n is None or args.n < 0:
            raise SystemExit("asym --which sigma-n needs --n N with N >= 0")
        records.append(_constant_record(asy.sigma_n(args.n)))
    elif args.which == "growth":
        cls = args.cls or "pp2"
        if cls not in ("pp2", "pp3", "bargraph", "R"):
            raise SystemExit("growth estimates are available for pp2, pp3, bargraph, R")
        N = args.order or (400 if cls in ("pp2", "bargraph") else 200)
        cap = order_cap(cls)
        if N > cap:
            raise SystemExit(f"order {N} exceeds the cap {cap} for {cls}")
        coeffs = series_coefficients(cls, N)
        mu, amp = asy.growth_estimate(coeffs)
        rec = {"name": f"growth[{cls}]", "coefficients": len(coeffs), "rate": float(mu),
               "singularity": float(1 / mu), "amplitude": float(amp)}
        if cls in ("pp2", "bargraph"):
            rec["target_rate"] = float(1 / asy.rho().value)
        else:
            rec["target_rate"] = float(1 / asy.sigma().value)
        if cls == "pp2":
            rec["target_amplitude"] = float(asy.amplitude_A().value)
        records.append(rec)
    meta = metadata(args)
    if args.format == "json":
        out.write(json.dumps({"metadata": meta, "constants": records}) + "\n")
    else:
        out.write("\n".join(_header_lines(meta)) + "\n")
        for r in records:
            out.write(" ".join(f"{k}={_fmt_value(v)}" for k, v in r.items()) + "\n")
    return 0


# -- sample ----------------------------------------------------------------------

def cmd_sample(args, out):
    from . import sampler
    from .sampler.tables import MAX_M
    cap = MAX_M[args.cls]
    if not 2 <= args.m <= cap:
        raise SystemExit(f"-m must be in 2..{cap} for class {args.cls}")
    if args.count < 0:
        raise SystemExit("-c must be >= 0")
    seed = args.seed
    seed = secrets.randbits(64) if seed == "random" else int(seed)
    args.seed = seed
    t0 = time.perf_counter()
    samples = sampler.sample_many(args.cls, args.m, args.count, seed, jobs=args.jobs)
    log_time = time.perf_counter() - t0
    meta = metadata(args, generator=sampler.GENERATOR)
    ext = {"svg": "svg", "json": "json", "ascii": "txt"}[args.format]
    blobs = []
    for s in samples:
        if args.validate:
            sampler.validate_polygon(s.polygon, args.cls, args.m)
        body = sampler.render(s.polygon, args.format, cls=args.cls, seed=s.seed, index=s.index,
                              generator=sampler.GENERATOR)
        if args.format == "svg":
            decl, rest = body.decode().split("\n", 1)
            note = json.dumps(dict(meta, index=s.index, sample_seed=s.seed), sort_keys=True)
            body = f"{decl}\n<!-- {note.replace('--', '- -')} -->\n{rest}".encode()
        blobs.append((s, body))
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        files = []
        for s, body in blobs:
            name = f"{args.cls}_m{args.m}_seed{seed}_{s.index:04d}.{ext}"
            (d / name).write_bytes(body)
            files.append(name)
        (d / "manifest.json").write_text(json.dumps({"metadata": meta, "files": files},
                                                    indent=1, sort_keys=True) + "\n")
        print(f"wrote {len(files)} files to {d}", file=sys.stderr)
    else:
        if args.format == "json":
            out.write(json.dumps({"metadata": meta}, sort_keys=True) + "\n")
        else:
            out.write("\n".join(_header_lines(meta)) + "\n")
        for s, body in blobs:
            if args.format == "ascii":
                # art lines never contain spaces, so "# " lines stay unambiguous
                out.write(f"# index: {s.index} seed: {s.seed}\n")
            out.write(body.decode())
    print(f"sampled {len(samples)} polygons in {log_time:.2f}s", file=sys.stderr)
    return 0


# -- validate --------------------------------------------------------------------

def run_validation(max_m, classes, report):
    """Cross-check oracle counts, series and tree levels up to ``max_m``; returns #failures."""
    from . import closed_forms as cf
    from . import oracle
    from .funceq_solver import class_F_counts, solve_feqB, solve_feqR
    from .sampler import level_counts

    failures = 0

    def check(name, got, want):
        nonlocal failures
        ok = got == want
        failures += not ok
        report(f"{'PASS' if ok else 'FAIL'} {name}" + ("" if ok else f": got {got}, expected {want}"))

    if max_m < 2:
        report("PASS nothing to check below half-perimeter 2")
        return 0
    N = max_m
    ms = range(2, max_m + 1)
    if "two" in classes:
        pp2 = cf.pp2_gf(N).scalars()
        check(f"bar graphs: closed form B(t,u) = functional equation at w=1 (t^{N})",
              cf.bargraph_gf(N), solve_feqB(N).evaluate(w=1))
        check("two-sided tree levels = bar-graph series",
              level_counts("two", N - 2), cf.bargraph_one(N).scalars()[2:])
        cap = oracle.DEFAULT_CAPS["two"]
        check(f"two-sided oracle = PP2 series (m <= {min(N, cap)})",
              [oracle.count(m, "two") for m in ms if m <= cap], [pp2[m] for m in ms if m <= cap])
    if "three" in classes:
        pp3 = cf.pp3_gf(N).scalars()
        R1 = cf.R_one(N)
        check(f"three-sided: kernel-method sum = functional equation (t^{N})",
              solve_feqR(N).evaluate(u=1, w=1), R1)
        check("three-sided tree levels = R(t,1,1)", level_counts("three", N - 2), R1.scalars()[2:])
        cap = oracle.DEFAULT_CAPS["three"]
        check(f"three-sided oracle = PP3 series (m <= {min(N, cap)})",
              [oracle.count(m, "three") for m in ms if m <= cap], [pp3[m] for m in ms if m <= cap])
    if "all" in classes:
        F = class_F_counts(max(N, 2))
        check("unrestricted tree levels = F(t,1,1,1)", level_counts("all", N - 2), F[2:N + 1])
        cap = oracle.DEFAULT_CAPS["all"]
        check(f"unrestricted oracle = 8 F(t,1,1,1) (m <= {min(N, cap)})",
              [oracle.count(m, "all") for m in ms if m <= cap], [8 * F[m] for m in ms if m <= cap])
        check(f"class F oracle = F(t,1,1,1) (m <= {min(N, cap)})",
              [oracle.count(m, "classF") for m in ms if m <= cap], [F[m] for m in ms if m <= cap])
    return failures


def cmd_validate(args, out):
    classes = [c.strip() for c in args.classes.split(",") if c.strip()]
    bad = [c for c in classes if c not in SAMPLE_CLASSES]
    if bad:
        raise SystemExit(f"unknown classes {bad}; choose from {','.join(SAMPLE_CLASSES)}")
    from .oracle import DEFAULT_CAPS
    limit = max(DEFAULT_CAPS[c] for c in classes)
    if args.max_m > limit:
        raise SystemExit(f"--max-m {args.max_m} exceeds the oracle cap {limit}")
    out.write("\n".join(_header_lines(metadata(args))) + "\n")
    failures = run_validation(args.max_m, classes, lambda line: out.write(line + "\n"))
    out.write(f"{'OK' if not failures else 'FAILED'}: {failures} mismatches\n")
    return 1 if failures else 0


# -- parser ----------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="prudent", description="Prudent polygon enumeration and sampling.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("series", help="exact coefficients of a generating function")
    s.add_argument("--class", dest="cls", required=True, choices=SERIES_CLASSES)
    s.add_argument("--order", type=int, default=20)
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.set_defaults(func=cmd_series)

    a = sub.add_parser("asym", help="singularities, amplitudes and growth estimates")
    a.add_argument("--which", required=True, choices=("rho", "A", "sigma", "sigma-n", "growth"))
    a.add_argument("--n", type=int)
    a.add_argument("--class", dest="cls", choices=("pp2", "pp3", "bargraph", "R"))
    a.add_argument("--order", type=int)
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.set_defaults(func=cmd_asym)

    m = sub.add_parser("sample", help="uniform random polygons")
    m.add_argument("--class", dest="cls", required=True, choices=SAMPLE_CLASSES)
    m.add_argument("-m", type=int, required=True, help="half-perimeter")
    m.add_argument("-c", "--count", type=int, default=1)
    m.add_argument("--seed", default=str(DEFAULT_SEED), help="integer, or 'random'")
    m.add_argument("--format", choices=("svg", "json", "ascii"), default="json")
    m.add_argument("--out", help="directory for one file per polygon (default: stdout)")
    m.add_argument("--jobs", type=int, default=1)
    m.add_argument("--no-validate", dest="validate", action="store_false",
                   help="skip the oracle check of each sample")
    m.set_defaults(func=cmd_sample)

    v = sub.add_parser("validate", help="cross-check oracle, series and generating trees")
    v.add_argument("--max-m", type=int, default=8)
    v.add_argument("--classes", default="two,three,all")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sample" and args.seed != "random":
        try:
            int(args.seed)
        except ValueError:
            parser.error("--seed must be an integer or 'random'")
    try:
        return args.func(args, out)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            parser.error(exc.code)
        raise


if __name__ == "__main__":
    sys.exit(main())
