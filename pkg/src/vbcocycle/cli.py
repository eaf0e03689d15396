"""Command-line front end.

Every subcommand parses its inputs, calls one library function and prints
the result.  Exit status: 0 ok, 1 domain error, 2 usage error.
"""
import argparse
import hashlib
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from contextlib import redirect_stdout
from fractions import Fraction
from pathlib import Path

from . import moves
from .algebra import (
    AxiomError,
    BiquandleTable,
    Permutation,
    VirtualBiquandle,
    alexander_biquandle,
    automorphism_group,
    check_axioms,
    conjugacy_class_reps,
    trivial_biquandle,
)
from .codes import catalog_entries, catalog_lookup, parse_code, serialize_code
from .cohomology import (
    as_cochain,
    compatibility_check,
    compatible_pairs,
    degenerate_basis,
    s_cocycle_basis,
    yb_cocycle_basis,
    zero_cochain,
)
from .invariant import detect_nonclassical, enumerate_colorings, phi_vyb, render_invariant

CACHE_ENV = "VBCOCYCLE_CACHE"
CACHE_FORMAT_VERSION = 1


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# argument decoding


def _num(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vec_text(vec) -> str:
    return "[" + ",".join(_num(x) for x in vec) + "]"


def _json_num(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_vector(text, n: int):
    if text is None or text == "zero":
        return zero_cochain(n)
    if isinstance(text, str):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError:
            raw = [t for t in text.strip("[] ").replace(",", " ").split()]
    else:
        raw = text
    try:
        vec = [Fraction(x) for x in raw]
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad cocycle vector {text!r}: {exc}") from None
    if len(vec) != n * n:
        raise ValueError(f"cocycle vector has {len(vec)} entries, expected {n * n}")
    return as_cochain(vec, n)


def _table(args) -> BiquandleTable:
    if args.alexander:
        try:
            n, s, t = (int(x) for x in str(args.alexander).replace(" ", "").strip("[]").split(","))
        except ValueError:
            raise UsageError("--alexander expects n,s,t") from None
        return alexander_biquandle(n, s, t)
    if args.trivial:
        return trivial_biquandle(int(args.trivial))
    if args.table:
        data = args.table
        if isinstance(data, str):
            with open(data) as fh:
                data = json.load(fh)
        table = BiquandleTable.from_json(data)
        report = check_axioms(table)
        if not report.ok:
            raise AxiomError(f"table is not a biquandle: {report}")
        return table
    raise UsageError("a table is required: --alexander, --trivial or --table")


def _code(args):
    if args.catalog:
        return catalog_lookup(args.catalog)
    if args.code is not None:
        return parse_code(args.code)
    if args.gaussint is not None:
        return parse_code(args.gaussint)
    raise UsageError("a code is required: --catalog, --code or --gaussint")


def _perm(args, table) -> Permutation:
    if args.S is None:
        return Permutation.identity(table.n)
    return Permutation.parse(args.S, table.n)


def _vb(args):
    table = _table(args)
    return VirtualBiquandle(table, _perm(args, table))


# --------------------------------------------------------------------------
# subcommands (each prints to stdout)


def cmd_axioms(args):
    table = _table(args)
    report = check_axioms(table)
    if args.format == "json":
        print(json.dumps({"ok": report.ok, "results": report.results,
                          "witnesses": {k: list(v) for k, v in report.witnesses.items()}}, sort_keys=True))
    else:
        for ax, good in report.results.items():
            print(f"axiom {ax}: " + ("pass" if good else f"FAIL {report.witnesses[ax]}"))
    return 0 if report.ok else 1


def cmd_alexander(args):
    table = _table(args)
    if args.format == "json":
        print(json.dumps(table.to_json(), sort_keys=True))
    else:
        for row in table.block_matrix():
            print(" ".join(str(x) for x in row))
    return 0


def cmd_vblist(args):
    table = _table(args)
    reps = conjugacy_class_reps(table)
    if args.format == "json":
        print(json.dumps({"automorphisms": len(automorphism_group(table)),
                          "representatives": [list(p) for p in reps]}))
    else:
        for p in reps:
            print("[" + ",".join(str(x) for x in p) + "]")
    return 0


def cmd_colorings(args):
    rows = enumerate_colorings(_code(args), _vb(args))
    if args.format == "json":
        print(json.dumps([list(r) for r in rows]))
    else:
        for r in rows:
            print(" ".join(str(x) for x in r))
    return 0


def cmd_count(args):
    n = len(enumerate_colorings(_code(args), _vb(args)))
    print(json.dumps({"count": n}) if args.format == "json" else n)
    return 0


def _print_basis(basis, fmt):
    if fmt == "json":
        print(json.dumps([[_json_num(x) for x in b] for b in basis]))
    else:
        for b in basis:
            print(_vec_text(b))


def cmd_ybcocycles(args):
    _print_basis(yb_cocycle_basis(_table(args), reduced=not args.unreduced), args.format)
    return 0


def cmd_scocycles(args):
    table = _table(args)
    _print_basis(s_cocycle_basis(table.n, _perm(args, table)), args.format)
    return 0


def cmd_degenerate(args):
    table = _table(args)
    _print_basis(degenerate_basis(table.n, _perm(args, table)), args.format)
    return 0


_FLAG = {"INCOMPATIBLE": "incompatible", "COMPATIBLE": "weakly compatible",
         "STRONGLY_COMPATIBLE": "strongly compatible"}


def cmd_compat(args):
    table = _table(args)
    S = _perm(args, table)
    if args.phi is not None or args.v is not None:
        phi = parse_vector(args.phi, table.n)
        v = parse_vector(args.v, table.n)
        flag = _FLAG[compatibility_check(table, S, phi, v).name]
        print(json.dumps({"compatibility": flag}) if args.format == "json" else flag)
        return 0
    pairs = [p for p in compatible_pairs(table, S) if args.all or not p.degenerate_v]
    if args.format == "json":
        print(json.dumps([p.to_json() for p in pairs], sort_keys=True))
    else:
        for p in pairs:
            kind = "strong" if p.strong else "weak"
            print(f"phi={_vec_text(p.phi)} v={_vec_text(p.v)} {kind}")
    return 0


def cmd_invariant(args):
    vb = _vb(args)
    inv = phi_vyb(_code(args), vb, parse_vector(args.phi, vb.n), parse_vector(args.v, vb.n))
    if args.format == "json":
        print(json.dumps(inv.to_json(), sort_keys=True))
    else:
        print(render_invariant(inv, args.format or "auto"))
    return 0


def cmd_nonclassical(args):
    report = detect_nonclassical(_code(args), _table(args))
    if args.format == "json":
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print("non-classical" if report.nonclassical else "undecided")
        for S, c in sorted(report.counts.items()):
            print(f"  S=[{','.join(map(str, S))}] count={c}")
        if report.s_power_witness:
            print(f"  s-power witness: {json.dumps(report.s_power_witness, sort_keys=True)}")
    return 0


def cmd_catalog(args):
    entries = catalog_entries()
    fmt = args.format or "tokens"
    if args.name:
        if args.name not in entries:
            catalog_lookup(args.name)  # raises with the list of names
        print(serialize_code(entries[args.name].code, fmt))
        return 0
    for name in sorted(entries):
        e = entries[name]
        print(f"{name}\t{serialize_code(e.code, fmt)}\t{e.note}")
    return 0


def cmd_shuffle(args):
    code, records = moves.random_equivalent(_code(args), args.seed, args.moves)
    if args.format == "json":
        print(json.dumps({"code": serialize_code(code, "tokens"),
                          "moves": [r.to_json() for r in records]}, sort_keys=True))
    else:
        print(serialize_code(code, args.format or "tokens"))
    return 0


COMMANDS = {
    "axioms": (cmd_axioms, "check the biquandle axioms"),
    "alexander": (cmd_alexander, "print a biquandle matrix"),
    "vblist": (cmd_vblist, "one automorphism per conjugacy class"),
    "colorings": (cmd_colorings, "list all colorings"),
    "count": (cmd_count, "counting invariant"),
    "ybcocycles": (cmd_ybcocycles, "basis of (reduced) Yang-Baxter 2-cocycles"),
    "scocycles": (cmd_scocycles, "basis of S 2-cocycles"),
    "degenerate": (cmd_degenerate, "basis of degenerate S-cochains"),
    "compat": (cmd_compat, "check or list compatible cocycle pairs"),
    "invariant": (cmd_invariant, "virtual Yang-Baxter cocycle invariant"),
    "nonclassical": (cmd_nonclassical, "try to certify non-classicality"),
    "catalog": (cmd_catalog, "list built-in codes"),
    "shuffle": (cmd_shuffle, "apply random equivalence moves"),
}

_FORMATS = ["multiset", "poly1", "poly2", "json", "tokens", "gaussint", "text"]


def _add_common(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--catalog", metavar="NAME")
    src.add_argument("--code", metavar="TOKENS")
    src.add_argument("--gaussint", metavar="LIST")
    tab = p.add_mutually_exclusive_group()
    tab.add_argument("--alexander", metavar="N,S,T")
    tab.add_argument("--trivial", metavar="N", type=int)
    tab.add_argument("--table", metavar="FILE")
    p.add_argument("--S", metavar="PERM")
    p.add_argument("--phi", metavar="VEC|zero")
    p.add_argument("--v", metavar="VEC|zero")
    p.add_argument("--format", choices=_FORMATS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vbcocycle", description="Virtual biquandle cocycle invariants.")
    parser.add_argument("--jobs", metavar="FILE", help="run a JSON-lines job file")
    parser.add_argument("--cache", metavar="DIR", help=f"result cache (default ${CACHE_ENV})")
    parser.add_argument("--workers", type=int, default=1)
    sub = parser.add_subparsers(dest="command")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        if name == "alexander":
            p.add_argument("params", nargs="?", metavar="N,S,T")
        if name == "ybcocycles":
            p.add_argument("--unreduced", action="store_true")
        if name == "compat":
            p.add_argument("--all", action="store_true", help="include degenerate v")
        if name == "catalog":
            p.add_argument("name", nargs="?")
        if name == "shuffle":
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--moves", type=int, default=5)
    return parser


def _format_ok(args):
    allowed = {
        "invariant": {"multiset", "poly1", "poly2", "json"},
        "catalog": {"tokens", "gaussint", "json"},
        "shuffle": {"tokens", "gaussint", "json"},
    }.get(args.command, {"json", "text"})
    if args.format is not None and args.format not in allowed:
        raise UsageError(f"--format {args.format} not valid for {args.command}")
    if args.format == "text":
        args.format = None


def run(args) -> int:
    """Execute parsed arguments; prints errors to stderr and returns the exit code."""
    try:
        _format_ok(args)
        if args.command == "alexander" and args.params:
            args.alexander = args.params
        return COMMANDS[args.command][0](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError, IndexError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1


# --------------------------------------------------------------------------
# batch jobs


def job_argv(job: dict) -> list:
    """Translate a job object into an argument vector."""
    if "command" not in job:
        raise ValueError("job has no 'command'")
    argv = [job["command"]]
    for key in ("catalog", "code", "gaussint", "S", "format"):
        if job.get(key) is not None:
            argv += [f"--{key}", str(job[key])]
    if job.get("alexander") is not None:
        params = job["alexander"]
        argv += ["--alexander", ",".join(map(str, params)) if isinstance(params, (list, tuple)) else str(params)]
    if job.get("trivial") is not None:
        argv += ["--trivial", str(job["trivial"])]
    for key in ("phi", "v"):
        if job.get(key) is not None:
            val = job[key]
            argv += [f"--{key}", val if isinstance(val, str) else json.dumps(val)]
    if job.get("unreduced"):
        argv.append("--unreduced")
    if job.get("all"):
        argv.append("--all")
    if job.get("name"):
        argv.append(job["name"])
    if "seed" in job:
        argv += ["--seed", str(job["seed"])]
    if "moves" in job:
        argv += ["--moves", str(job["moves"])]
    return argv


def _run_job(job) -> dict:
    """Run one job in-process, capturing output; never raises."""
    out, err = io.StringIO(), io.StringIO()
    try:
        table = job.get("table") if isinstance(job, dict) else None
        argv = job_argv(job)
        with redirect_stdout(out):
            old = sys.stderr
            sys.stderr = err
            try:
                try:
                    args = build_parser().parse_args(argv)
                except SystemExit as exc:
                    code = exc.code if isinstance(exc.code, int) else 2
                else:
                    if table is not None:
                        args.table = table
                    code = run(args)
            finally:
                sys.stderr = old
    except Exception as exc:  # malformed job object
        return {"exit": 1, "error": str(exc)}
    result = {"exit": code, "output": out.getvalue()}
    if code != 0:
        result["error"] = err.getvalue().strip()
    return result


def job_key(job) -> str:
    blob = json.dumps({"format_version": CACHE_FORMAT_VERSION, "job": job}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def batch_run(lines, cache_dir=None, workers: int = 1):
    """Run JSON-lines jobs; returns the report lines (one JSON string per job).

    Results are cached under ``cache_dir`` by a content hash of the job.
    Blank lines are skipped; unparsable lines produce an error result.
    """
    jobs = []
    for raw in lines:
        raw = raw.strip()
        if not raw:
            continue
        try:
            jobs.append(json.loads(raw))
        except json.JSONDecodeError as exc:
            jobs.append({"_invalid": f"bad job line: {exc}"})
    cache = Path(cache_dir) if cache_dir else None
    results = [None] * len(jobs)
    todo = []
    for i, job in enumerate(jobs):
        if isinstance(job, dict) and "_invalid" in job:
            results[i] = {"exit": 1, "error": job["_invalid"]}
            continue
        if cache is not None:
            hit = cache / f"{job_key(job)}.json"
            if hit.exists():
                results[i] = json.loads(hit.read_text())
                continue
        todo.append(i)
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            fresh = list(pool.map(_run_job, [jobs[i] for i in todo]))
    else:
        fresh = [_run_job(jobs[i]) for i in todo]
    for i, res in zip(todo, fresh):
        results[i] = res
        if cache is not None:
            _atomic_write(cache / f"{job_key(jobs[i])}.json", json.dumps(res, sort_keys=True))
    return [json.dumps({"job": i, **res}, sort_keys=True) for i, res in enumerate(results)]


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.jobs:
        cache = args.cache or os.environ.get(CACHE_ENV)
        try:
            with open(args.jobs) as fh:
                lines = fh.readlines()
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        for line in batch_run(lines, cache, max(1, args.workers)):
            print(line)
        return 0
    if not args.command:
        parser.print_usage(sys.stderr)
        print("vbcocycle: error: a subcommand is required", file=sys.stderr)
        return 2
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
