"""Command-line front end.

Every subcommand builds a JSON-serialisable result, embeds the run
configuration, and renders it as JSON, a plain table or a LaTeX tabular.
Exit codes: 0 success, 1 a checked identity failed, 2 bad usage or input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Callable

from . import complexes, exp_map, integrality, moduli
from .config import FORMATS, RunConfig
from .exact import GradedSeries, parse_scalar
from .groups import Kind, Partition, centre_structure, partitions_of, weyl_order
from .molien import Parity


class UsageError(Exception):
    pass


# -- rendering ---------------------------------------------------------------

def _flatten(obj, prefix=""):
    if isinstance(obj, dict) and obj.get("vars") == 1 and "coeffs" in obj:
        yield prefix, GradedSeries.from_json(obj).to_text()
    elif isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(obj) if isinstance(obj, (list, bool)) or obj is None else str(obj)


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True)
    rows = list(_flatten(payload["result"]))
    if fmt == "table":
        width = max((len(k) for k, _ in rows), default=0)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)

    special = {"\\": r"\textbackslash{}", "_": r"\_", "^": r"\^{}", "&": r"\&",
               "%": r"\%", "#": r"\#", "{": r"\{", "}": r"\}", "$": r"\$"}

    def esc(text: str) -> str:
        return "".join(special.get(ch, ch) for ch in text)

    body = "\n".join(f"\\texttt{{{esc(k)}}} & \\texttt{{{esc(v)}}} \\\\" for k, v in rows)
    return "\\begin{tabular}{ll}\n\\hline\n" + body + "\n\\hline\n\\end{tabular}"


# -- helpers -------------------------------------------------------------------

def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


# -- commands ------------------------------------------------------------------

def cmd_dt(cfg: RunConfig) -> tuple[dict, bool]:
    kind = Kind.parse(_need(cfg.kind, "--kind"))
    n = _need(cfg.n, "--n")
    series = integrality.dt_cohomology(kind, n, cfg.max_deg, parity=cfg.parity)
    result = {"kind": kind.value, "n": n, "series": series.to_json()}
    if kind == Kind.PGL:
        count, contribution = moduli.twisted_component_data(n)
        result["twisted"] = {
            "components": count,
            "contribution": contribution.to_json(),
            "total": (series + contribution).to_json(),
        }
    return result, True


def cmd_verify(cfg: RunConfig) -> tuple[dict, bool]:
    if cfg.action == "integrality":
        kind = Kind.parse(_need(cfg.kind, "--kind"))
        if kind not in (Kind.GL, Kind.GL_ADD):
            raise UsageError(f"integrality as a symmetric algebra is not defined for {kind.value}")
        report = integrality.verify_integrality(kind, cfg.max_n or 6, cfg.window, cfg.parity)
        return report.to_json(), report.ok
    primes = cfg.primes or (2, 3, 5, 7)
    results = [integrality.langlands_check(p, cfg.window, cfg.parity) for p in primes]
    return {"results": [r.to_json() for r in results]}, all(r.ok for r in results)


def _load_complex(obj) -> tuple[complexes.BasedComplex, dict]:
    if not isinstance(obj, dict):
        raise UsageError("complex file must hold a JSON object")
    if "operators" in obj:
        ops = complexes.OperatorTriple.from_json(obj)
        return complexes.build_t3_complex(ops), {}
    if "dims" in obj:
        h = obj.get("h_reps") or {}
        return complexes.BasedComplex.from_json(obj), {int(k): v for k, v in h.items()}
    raise UsageError("complex file needs either 'dims'/'differentials' or 'operators'")


def cmd_complex(cfg: RunConfig) -> tuple[dict, bool]:
    if cfg.options.get("orientation_check"):
        rng = random.Random(cfg.require_seed())
        n = _need(cfg.n, "--n")
        samples = cfg.samples or 3
        runs = []
        for lam in partitions_of(n):
            if lam.l == 1:
                continue
            values = complexes.orientation_suite(rng, lam, samples)
            runs.append({"partition": lam.to_json(), "torsions": [str(v) for v in values]})
        ok = all(v == "1" for r in runs for v in r["torsions"])
        return {"n": n, "samples_per_partition": samples, "runs": runs, "all_one": ok}, ok
    path = _need(cfg.file, "a complex file")
    c, h_reps = _load_complex(_read_json(path))
    ranks = complexes.cohomology_ranks(c)
    euler_ok = c.euler_characteristic() == sum((-1) ** k * b for k, b in enumerate(ranks))
    result = {"dims": list(c.dims), "homology_ranks": ranks, "euler_characteristic": c.euler_characteristic(),
              "euler_check": euler_ok}
    if cfg.action == "torsion":
        converted = {k: [[parse_scalar(x) for x in v] for v in vs] for k, vs in h_reps.items()}
        result["torsion"] = str(complexes.torsion(c, converted or None))
    return result, euler_ok


def cmd_strata(cfg: RunConfig) -> tuple[dict, bool]:
    if cfg.action == "twisted":
        n = _need(cfg.n, "--n")
        vec = cfg.options.get("vector")
        result: dict = {"n": n}
        ok = True
        if vec is not None:
            form, witness = moduli.twisted_normal_form(vec, n)
            ok = moduli.check_witness(vec, n, form, witness)
            result.update({"vector": list(vec), "normal_form": list(form), "witness": witness, "witness_ok": ok})
        if integrality.is_prime(n):
            count, contribution = moduli.twisted_component_data(n)
            result.update({"components": count, "contribution": contribution.to_json()})
        elif vec is None:
            raise UsageError(f"twisted components need prime n (got {n}); pass --vector for a normal form")
        return result, ok
    if cfg.file:
        point = moduli.SymPoint.from_json(_read_json(cfg.file))
        return _point_report(point, cfg.action), True
    if cfg.action != "fibers":
        raise UsageError("strata classify needs a point file")
    return _fiber_suite(cfg)


def _point_report(p: moduli.SymPoint, action: str) -> dict:
    lam = moduli.stratum_of(p)
    out = {"kind": p.kind.value, "n": p.n, "stratum": lam.to_json(), "generic": moduli.is_generic(p)}
    prime = integrality.is_prime(p.n)
    if p.kind == Kind.SL and prime:
        out["bad"] = moduli.is_bad_point(p, p.n)
    if action == "fibers":
        out["theta_fiber"] = len(moduli.theta_fiber(p, lam))
        out["weyl_order"] = weyl_order(lam)
        if p.kind == Kind.SL and prime:
            out["sl_pgl_fiber"] = moduli.sl_pgl_fiber(p, p.n)
        if p.kind == Kind.GL:
            try:
                out["eta2_fiber"] = moduli.eta2_fiber_size(p, p.n)
            except ValueError as exc:
                out["eta2_fiber"] = f"unavailable: {exc}"
    return out


def _fiber_suite(cfg: RunConfig) -> tuple[dict, bool]:
    rng = random.Random(cfg.require_seed())
    n = _need(cfg.n, "--n")
    samples = cfg.samples or 30
    theta = []
    for lam in partitions_of(n):
        sizes = {len(moduli.theta_fiber(moduli.random_point(rng, lam), lam)) for _ in range(samples)}
        theta.append({"partition": lam.to_json(), "weyl_order": weyl_order(lam), "sizes": sorted(sizes)})
    ok = all(t["sizes"] == [t["weyl_order"]] for t in theta)
    result = {"n": n, "samples": samples, "theta": theta}
    eta = {moduli.eta2_fiber_size(moduli.random_point(rng, Partition((1,) * n), power=n), n) for _ in range(samples)}
    result["eta2_sizes"] = sorted(eta)
    ok = ok and result["eta2_sizes"] == [n**3]
    if integrality.is_prime(n):
        good = {moduli.sl_pgl_fiber(moduli.random_good_sl_point(rng, n), n) for _ in range(samples)}
        bad = sorted({moduli.sl_pgl_fiber(b, n) for b in moduli.bad_points(n)})
        result["sl_pgl"] = {"off_bad_locus": sorted(good), "bad_points": bad}
        ok = ok and sorted(good) == [n**3] and all(b < n**3 for b in bad)
    return result, ok


def cmd_exp(cfg: RunConfig) -> tuple[dict, bool]:
    if cfg.file:
        lists = [exp_map.eigenlist_from_json(_read_json(cfg.file))]
    else:
        rng = random.Random(cfg.require_seed())
        n = cfg.n or 4
        lists = [exp_map.random_eigenlist(rng, n) for _ in range(cfg.samples or 200)]
    rows = []
    ok = True
    for e in lists:
        etale = exp_map.is_etale(e)
        kept = exp_map.check_stabiliser_preservation(e)
        ok = ok and (kept or not etale)
        rows.append({
            "eigenvalues": exp_map.eigenlist_to_json(e) if cfg.file else [str(x) for x in e],
            "etale": etale,
            "eig_partition": exp_map.eig_partition(e).to_json(),
            "exp_partition": exp_map.exp_partition(e).to_json(),
            "stabiliser_preserved": kept,
        })
    return {"lists": rows, "implication_holds": ok}, ok


def cmd_centre(cfg: RunConfig) -> tuple[dict, bool]:
    n = _need(cfg.n, "--n")
    kinds = [Kind.parse(cfg.kind)] if cfg.kind else [Kind.GL, Kind.SL, Kind.PGL]
    rows = []
    ok = True
    for lam in partitions_of(n):
        for kind in kinds:
            free, torsion = centre_structure(kind, lam)
            row = {"kind": kind.value, "partition": lam.to_json(), "free_rank": free, "torsion": torsion}
            if kind == Kind.SL:
                row["expected"] = [lam.l - 1, lam.gcd()]
                ok = ok and [free, torsion] == row["expected"]
            rows.append(row)
    return {"n": n, "centres": rows}, ok


def cmd_bps_rank(cfg: RunConfig) -> tuple[dict, bool]:
    l_, k = cfg.options.get("l"), cfg.options.get("k")
    _need(l_, "--l")
    _need(k, "--k")
    return {"l": l_, "k": k, "rank": integrality.bps_rank(l_, k)}, True


COMMANDS: dict[str, Callable[[RunConfig], tuple[dict, bool]]] = {
    "dt": cmd_dt,
    "verify": cmd_verify,
    "complex": cmd_complex,
    "strata": cmd_strata,
    "exp": cmd_exp,
    "centre": cmd_centre,
    "bps-rank": cmd_bps_rank,
}


# -- argument parsing ----------------------------------------------------------

def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--seed", type=int)
    common.add_argument("--min-deg", type=int, default=-12)
    common.add_argument("--max-deg", type=int, default=30)
    common.add_argument("--parity", choices=[p.value for p in Parity], default=Parity.SHIFTED.value)

    parser = argparse.ArgumentParser(prog="dtcoh", description="Exact DT cohomology computations.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("dt", parents=[common], help="DT cohomology series of one group")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("verify", help="integrality and Langlands checks")
    vsub = p.add_subparsers(dest="action", required=True)
    q = vsub.add_parser("integrality", parents=[common])
    q.add_argument("--kind", required=True)
    q.add_argument("--max-n", type=int, default=6)
    q = vsub.add_parser("langlands", parents=[common])
    q.add_argument("--primes", type=_int_list, default=(2, 3, 5, 7))

    p = sub.add_parser("complex", help="T^3 complexes: ranks and torsion")
    csub = p.add_subparsers(dest="action", required=True)
    for name in ("ranks", "torsion"):
        q = csub.add_parser(name, parents=[common])
        q.add_argument("file", nargs="?")
        q.add_argument("--orientation-check", action="store_true")
        q.add_argument("--n", type=int)
        q.add_argument("--samples", type=int)

    p = sub.add_parser("strata", help="strata, cover fibres and twisted classes")
    ssub = p.add_subparsers(dest="action", required=True)
    for name in ("classify", "fibers", "twisted"):
        q = ssub.add_parser(name, parents=[common])
        if name != "twisted":
            q.add_argument("file", nargs="?")
            q.add_argument("--samples", type=int)
        else:
            q.add_argument("--vector", type=_int_list)
        q.add_argument("--n", type=int)

    p = sub.add_parser("exp", help="exponential-map checks on eigenvalue lists")
    esub = p.add_subparsers(dest="action", required=True)
    q = esub.add_parser("check", parents=[common])
    q.add_argument("file", nargs="?")
    q.add_argument("--n", type=int)
    q.add_argument("--samples", type=int)

    p = sub.add_parser("centre", parents=[common], help="centres of Levi subgroups")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind")

    p = sub.add_parser("bps-rank", parents=[common], help="rank of the degree-k BPS piece")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    get = lambda name, default=None: getattr(args, name, default)  # noqa: E731
    options = {}
    for key in ("orientation_check", "vector", "l", "k"):
        value = get(key)
        if value not in (None, False):
            options[key] = list(value) if isinstance(value, tuple) else value
    return RunConfig(
        subcommand=args.subcommand,
        action=get("action"),
        kind=get("kind"),
        n=get("n"),
        max_n=get("max_n"),
        primes=tuple(get("primes") or ()),
        min_deg=args.min_deg,
        max_deg=args.max_deg,
        parity=args.parity,
        seed=args.seed,
        samples=get("samples"),
        file=get("file"),
        format=args.format,
        options=options,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        result, ok = COMMANDS[cfg.subcommand](cfg)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = {"config": cfg.to_json(), "result": result, "ok": ok}
    print(render(payload, cfg.format))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
