"""Command line driver: ``qcactus --suite NAME [options]``.

Exit status is 0 when every check passes, 1 when any check fails and 2 on
usage errors.  Reports are deterministic for a fixed configuration: records
keep task order, dictionaries are written with sorted keys and no timings are
included unless ``--timing`` is given.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .cartan import CartanError
from .crystal import CrystalError
from .hecke import HeckeError
from .suites import SUITES, ConfigError, SuiteConfig, run
from .tableaux import TableauError

FORMATS = ("text", "json", "tsv", "dot")


class UsageError(ValueError):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcactus", description="Exact checks for braid, crystal and cactus actions.")
    p.add_argument("--suite", choices=SUITES + ("all",),
                   help="suite to run; 'all' runs every suite at its defaults, in the order listed")
    p.add_argument("--type", choices=("A", "D", "E"), help="Dynkin type")
    p.add_argument("--rank", type=int, help="rank of the Dynkin diagram")
    p.add_argument("--k", type=int, help="U_q(sl_k) for the module suites")
    p.add_argument("--n", type=int, help="tensor power, or the size n of S_n")
    p.add_argument("--weight", type=_int_list, action="append",
                   help="highest weight in fundamental coordinates (crystal suites) or a partition "
                        "(tableau and Hecke suites); repeatable")
    p.add_argument("--word", type=_int_list, help="word of Dynkin nodes (zigzag composite)")
    p.add_argument("--tableau", help="single-shot tableau query, rows separated by '/', e.g. 1,2,4/3,5")
    p.add_argument("--max-basis", type=int, help="largest tensor module basis (env QCACTUS_MAX_BASIS)")
    p.add_argument("--max-nodes", type=int, help="largest crystal (env QCACTUS_MAX_NODES)")
    p.add_argument("--max-dim", type=int, help="largest Weyl dimension enumerated (env QCACTUS_MAX_DIM)")
    p.add_argument("--max-sn", type=int, help="largest symmetric group (env QCACTUS_MAX_SN)")
    p.add_argument("--max-pairs", type=int, default=20, help="reduced-word pairs per module in the braid suite")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--seed", type=int, default=0, help="seed recorded in the report (the suites are exhaustive)")
    p.add_argument("--out", help="write the report or artifact here instead of stdout")
    p.add_argument("--timing", action="store_true", help="append wall-clock timings (breaks byte stability)")
    p.add_argument("--version", action="version", version=f"qcactus {__version__}")
    return p


def config_from_args(args, suite=None) -> SuiteConfig:
    suite = suite or args.suite
    if suite is None:
        raise UsageError("--suite is required (or use --tableau for a single query)")
    kw = {}
    for name in ("max_basis", "max_nodes", "max_dim", "max_sn"):
        value = getattr(args, name)
        if value is not None:
            kw[name] = value
    cfg = SuiteConfig(suite=suite, type=args.type, rank=args.rank, k=args.k, n=args.n,
                      weights=[tuple(w) for w in args.weight] if args.weight else None,
                      word=tuple(args.word) if args.word else None, max_pairs=args.max_pairs,
                      jobs=args.jobs, seed=args.seed, **kw)
    cfg.validate()
    return cfg


# -- formatting ---------------------------------------------------------------------------------


def _json_default(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "tolist"):
        return obj.tolist()
    return str(obj)


def _params(params: dict) -> str:
    return json.dumps(params, sort_keys=True, default=_json_default, separators=(",", ":"))


def render_text(cfg: SuiteConfig, reports, timings=None) -> str:
    lines = ["# qcactus report", f"suite: {cfg.suite}", f"config: {_params(cfg.as_dict())}"]
    total = fails = 0
    for k, rep in enumerate(reports):
        c = rep.counts()
        total += c["checks"]
        fails += c["failures"]
        status = "PASS" if rep.ok else "FAIL"
        line = f"[{status}] {rep.name} checks={c['checks']} failures={c['failures']}"
        if timings is not None:
            line += f" time={timings[k]:.3f}s"
        lines.append(line)
        groups: dict = {}
        for r in rep.records:
            g = groups.setdefault(r.identity, [0, 0])
            g[0] += 1
            g[1] += 0 if r.ok else 1
        for identity, (n, f) in groups.items():
            lines.append(f"    {'ok  ' if f == 0 else 'FAIL'} {identity} ({n - f}/{n})")
        for r in rep.failures:
            lines.append(f"      witness: {r.identity} {_params(r.params)} {r.detail}".rstrip())
        if rep.data:
            lines.append(f"    data: {json.dumps(rep.data, sort_keys=True, default=_json_default)}")
    lines.append(f"summary: reports={len(reports)} checks={total} failures={fails} "
                 f"status={'PASS' if fails == 0 else 'FAIL'}")
    return "\n".join(lines) + "\n"


def render_json(cfg: SuiteConfig, reports, timings=None) -> str:
    body = {
        "suite": cfg.suite,
        "config": cfg.as_dict(),
        "reports": [r.as_dict() for r in reports],
        "summary": {
            "reports": len(reports),
            "checks": sum(r.counts()["checks"] for r in reports),
            "failures": sum(r.counts()["failures"] for r in reports),
        },
    }
    if timings is not None:
        body["timings"] = [round(t, 6) for t in timings]
    return json.dumps(body, sort_keys=True, indent=2, default=_json_default) + "\n"


def render_tsv(cfg: SuiteConfig, reports, timings=None) -> str:
    lines = ["suite\treport\tidentity\tparameters\tstatus\tdetail"]
    for rep in reports:
        for r in rep.records:
            detail = r.detail.replace("\t", " ").replace("\n", " ")
            lines.append(f"{cfg.suite}\t{rep.name}\t{r.identity}\t{_params(r.params)}\t"
                         f"{'pass' if r.ok else 'FAIL'}\t{detail}")
    return "\n".join(lines) + "\n"


def render_dot(cfg: SuiteConfig) -> str:
    """Graph artifact of a suite: a crystal or the W-graph of S_n."""
    if cfg.suite in ("crystal-axioms", "cactus"):
        from .cartan import build_cartan
        from .crystal import crystal_from_highest

        if cfg.type is None or not cfg.weights or len(cfg.weights) != 1:
            raise UsageError("DOT output needs --type, --rank and exactly one --weight")
        g = crystal_from_highest(build_cartan(cfg.type, cfg.rank), cfg.weights[0], max_nodes=cfg.max_nodes)
        return g.to_dot()
    if cfg.suite == "kl":
        from .hecke import w_graph_dot

        if cfg.n is None:
            raise UsageError("DOT output for kl needs --n")
        return w_graph_dot(cfg.n)
    raise UsageError(f"suite {cfg.suite!r} has no graph artifact; DOT output is available for "
                     "crystal-axioms, cactus and kl")


def render_kl_tsv(cfg: SuiteConfig) -> str:
    from .hecke import kl_polynomials

    return kl_polynomials(cfg.n).to_tsv()


def tableau_query(text: str) -> str:
    from .tableaux import demotion, evacuation, parse_tableau, promotion, promotion_order, syt_enumerate, xi_on_syt

    T = parse_tableau(text)
    out = {"tableau": str(T), "shape": list(T.shape), "standard": T.is_standard()}
    if not T.is_standard():
        raise UsageError(f"{text!r} is not a standard Young tableau")
    n = T.size
    out["promotion"] = str(promotion(T))
    out["demotion"] = str(demotion(T))
    out["evacuation"] = str(evacuation(T))
    out["promotion_order"] = promotion_order(T)
    if n >= 2 and len(syt_enumerate(T.shape)) <= 200:
        xi = xi_on_syt(T.shape)
        out["xi_I"] = str(xi[T])
        if n >= 3:
            xj = xi_on_syt(T.shape, J=tuple(range(1, n - 1)))
            out["xi_J*xi_I"] = str(xj[xi[T]])
            out["xi_I*xi_J"] = str(xi[xj[T]])
    return json.dumps(out, sort_keys=True, indent=2) + "\n"


# -- entry point -------------------------------------------------------------------------------


def _run_reports(cfg: SuiteConfig, timing: bool):
    if not timing:
        return run(cfg), None
    from .suites import _run_task, tasks_for

    reports, timings = [], []
    for task in tasks_for(cfg):
        t0 = time.perf_counter()
        reports.append(_run_task(task))
        timings.append(time.perf_counter() - t0)
    return reports, timings


def run_all(args) -> tuple[str, bool]:
    """Every suite at its default parameters; only bounds, jobs and seed are taken from ``args``."""
    if args.format == "dot":
        raise UsageError("DOT output needs a single suite")
    narrowing = [f for f in ("type", "rank", "k", "n", "weight", "word") if getattr(args, f) is not None]
    if narrowing:
        raise UsageError(f"--suite all runs the default parameters; drop --{narrowing[0]}")
    chunks, bodies, ok = [], [], True
    for suite in SUITES:
        cfg = config_from_args(args, suite)
        reports, timings = _run_reports(cfg, args.timing)
        ok &= all(r.ok for r in reports)
        if args.format == "json":
            bodies.append(json.loads(render_json(cfg, reports, timings)))
        else:
            text = {"text": render_text, "tsv": render_tsv}[args.format](cfg, reports, timings)
            if args.format == "tsv" and chunks:
                text = text.split("\n", 1)[1]
            chunks.append(text)
    if args.format == "json":
        return json.dumps({"suites": bodies}, sort_keys=True, indent=2) + "\n", ok
    return "".join(chunks), ok


def _emit(text: str, target: str | None) -> None:
    if not text:
        raise UsageError("nothing to emit")
    if target:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tableau is not None:
            _emit(tableau_query(args.tableau), args.out)
            return 0
        if args.suite == "all":
            text, ok = run_all(args)
            _emit(text, args.out)
            return 0 if ok else 1
        cfg = config_from_args(args)
        if args.format == "dot":
            _emit(render_dot(cfg), args.out)
            return 0
        if args.format == "tsv" and cfg.suite == "kl" and cfg.n is not None and args.weight is None:
            # the KL table is the natural tabular artifact of this suite
            _emit(render_kl_tsv(cfg), args.out)
            return 0
        reports, timings = _run_reports(cfg, args.timing)
        render = {"text": render_text, "json": render_json, "tsv": render_tsv}[args.format]
        _emit(render(cfg, reports, timings), args.out)
        return 0 if all(r.ok for r in reports) else 1
    except (UsageError, ConfigError, CartanError, CrystalError, HeckeError, TableauError) as exc:
        parser.print_usage(sys.stderr)
        print(f"qcactus: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"qcactus: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
