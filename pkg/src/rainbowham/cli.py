"""
rainbowham CLI - Unified Command-Line Interface
===============================================

Batch frontend over every module. Witnesses, verdicts and reports go to
standard output; diagnostics go to standard error.

Exit codes (every subcommand):
    0  found / true / success
    1  definitive negative (not found, false, certificate rejected)
    2  usage or input error
    3  search budget exceeded (nothing proven)

``solve hc`` and ``solve hp`` exit 1 only when the search was exhausted
or a certificate verified.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import colorlog

from .core.exceptions import RainbowHamError
from .core.structured_logger import TraceContext
from .core.types import AnalysisMode, BInternal, ExitCode, SearchStatus, Target

try:
    from importlib import metadata
    __version__ = metadata.version('rainbowham')
except Exception:
    __version__ = '0.0.0-dev'

logger = logging.getLogger(__name__)


def setup_logging(level: str = "WARNING", log_format: str = "text") -> None:
    """Configure logging for the CLI; records go to stderr"""
    log_level = getattr(logging, level.upper(), logging.WARNING)

    handler = logging.StreamHandler(sys.stderr)
    if log_format == "json":
        # StructuredLogger records are already JSON
        handler.setFormatter(logging.Formatter("%(message)s"))
    else:
        handler.setFormatter(
            colorlog.ColoredFormatter(
                "%(log_color)s%(asctime)s - %(name)s - %(levelname)s%(reset)s - %(message)s"
            )
        )

    logging.basicConfig(level=log_level, handlers=[handler], force=True)


# =============================================================================
# SHARED PLUMBING
# =============================================================================


def _settings(args):
    return args.settings


def _seed(args, settings) -> int:
    return args.seed if args.seed is not None else settings.seed


def _budget(args, settings, parity_precheck: Optional[bool] = None):
    from .solver.budget import SearchBudget

    threads = args.threads if args.threads is not None else settings.solver.threads
    return SearchBudget(
        node_limit=settings.solver.node_limit,
        time_limit_ms=args.timeout_ms if args.timeout_ms is not None else settings.solver.time_limit_ms,
        deterministic=settings.solver.deterministic and threads == 1,
        threads=threads,
        parity_precheck=settings.solver.parity_precheck if parity_precheck is None else parity_precheck,
    )


def _mode(args, settings) -> AnalysisMode:
    return AnalysisMode(getattr(args, "mode", None) or settings.analysis.mode)


def _pick(value, default):
    return default if value is None else value


def _load(path: str):
    from .core.codec import load_collection

    return load_collection(path)


def _emit(args, document: Dict[str, Any], text: Optional[List[str]] = None) -> None:
    """JSON document or text summary on stdout"""
    if args.format == "json" or text is None:
        print(json.dumps(document, sort_keys=True, indent=2))
    else:
        print("\n".join(text))


def _write(path: Optional[str], content: str) -> None:
    if path:
        Path(path).write_text(content + "\n", encoding="utf-8")


# =============================================================================
# GEN
# =============================================================================


def cmd_gen(args) -> int:
    """Handle 'gen' command"""
    from .constructions import (
        make_balanced_bipartite,
        make_H,
        make_half_split,
        make_two_cliques,
        perturb,
        random_min_degree_collection,
    )
    from .core.codec import dump_collection

    settings = _settings(args)
    seed = _seed(args, settings)
    if args.family == "two-cliques":
        g = make_two_cliques(args.n)
    elif args.family == "bipartite":
        g = make_balanced_bipartite(args.n)
    elif args.family == "hab":
        g = make_H(args.n, args.a, args.b)
    elif args.family == "half-split":
        g = make_half_split(args.n, args.s, BInternal(args.b_internal), args.part_size)
    elif args.family == "random":
        g = random_min_degree_collection(args.n, _pick(args.s, args.n), args.d, seed)
    else:
        g = perturb(_load(args.input), args.edits, seed)

    text = dump_collection(g)
    if args.output:
        _write(args.output, text)
        print(f"wrote {args.family} collection (n = {g.n}, colors = {g.colors}) to {args.output}", file=sys.stderr)
    else:
        print(text)
    return ExitCode.SUCCESS


# =============================================================================
# SOLVE
# =============================================================================


def cmd_solve(args) -> int:
    """Handle 'solve hc|hp|matching' command"""
    from .core.codec import dump_subgraph, subgraph_to_dict
    from .solver import (
        find_transversal_hamilton_cycle,
        find_transversal_hamilton_path,
        max_transversal_matching,
    )

    settings = _settings(args)
    g = _load(args.collection)

    if args.problem == "matching":
        matching = max_transversal_matching(g)
        _write(args.output, dump_subgraph(matching))
        _emit(
            args,
            {"size": len(matching.edges), "witness": subgraph_to_dict(matching)},
            [f"size: {len(matching.edges)}", f"witness: {dump_subgraph(matching)}"],
        )
        return ExitCode.SUCCESS

    budget = _budget(args, settings, False if args.no_parity_precheck else None)
    if args.problem == "hc":
        outcome = find_transversal_hamilton_cycle(g, budget)
    else:
        outcome = find_transversal_hamilton_path(g, budget)

    document: Dict[str, Any] = {
        "status": outcome.status.value,
        "stats": outcome.stats.to_dict(),
        "witness": subgraph_to_dict(outcome.witness) if outcome.witness else None,
    }
    text = [f"status: {outcome.status.value}", f"backing: {outcome.stats.backing}"]
    if outcome.witness is not None:
        _write(args.output, dump_subgraph(outcome.witness))
        text.append(f"witness: {dump_subgraph(outcome.witness)}")
    _emit(args, document, text)

    if outcome.status == SearchStatus.FOUND:
        return ExitCode.SUCCESS
    if outcome.status == SearchStatus.EXHAUSTED:
        return ExitCode.NEGATIVE
    return ExitCode.BUDGET_EXCEEDED


# =============================================================================
# ANALYZE
# =============================================================================


def cmd_analyze(args) -> int:
    """Handle 'analyze stability|color|collection-nice' command"""
    from .structure import (
        analyze_colors,
        characteristic_partition,
        classify_stability,
        is_collection_nice,
        is_nice,
        stable_implies_nice,
    )

    settings = _settings(args)
    seed = _seed(args, settings)
    mode = _mode(args, settings)
    restarts = _pick(args.restarts, settings.analysis.nice_restarts)
    g = _load(args.collection)

    if args.what == "stability":
        st = settings.stability
        verdict = classify_stability(
            g,
            _pick(args.gamma, st.gamma),
            _pick(args.alpha, st.alpha),
            _pick(args.eps, st.eps),
            _pick(args.delta, st.delta),
            mode,
            seed,
            restarts,
        )
        document = {"verdict": verdict.to_dict()}
        if args.mu is not None:
            document["stable_implies_nice"] = stable_implies_nice(g, verdict, args.mu, mode, seed).to_dict()
        text = [
            f"status: {verdict.status.value}",
            f"nice colors: {sorted(verdict.nice_colors)}",
            f"cross edges: {verdict.cross_edge_count}",
            f"heuristic: {verdict.heuristic}",
        ]
        _emit(args, document, text)
        return ExitCode.SUCCESS if verdict.stable else ExitCode.NEGATIVE

    if args.what == "color":
        eps = _pick(args.eps, settings.stability.alpha)
        verdict = is_nice(g, eps, mode, args.color, seed, restarts)
        profile = analyze_colors(g, eps, mode, seed, restarts, colors=[args.color])[0]
        partition = characteristic_partition(g, eps, args.color, mode, seed, restarts) if profile.extremal else None
        document = {
            "color": args.color,
            "nice": verdict.to_dict(),
            "extremal": profile.extremal,
            "characteristic_partition": partition.to_dict() if partition else None,
            "low_degree_vertices": profile.low_degree_vertices,
        }
        text = [
            f"color {args.color}: nice = {verdict.nice} (min count {verdict.min_count}, threshold {verdict.threshold})",
            f"extremal: {profile.extremal}",
            f"partition: {partition.kind.value if partition else 'absent'}",
        ]
        _emit(args, document, text)
        return ExitCode.SUCCESS if verdict.nice else ExitCode.NEGATIVE

    mu = _pick(args.mu, settings.stability.eps**3)
    verdict = is_collection_nice(g, mu, mode, seed, restarts)
    _emit(args, verdict.to_dict(), [f"nice: {verdict.nice}", f"threshold: {verdict.threshold}"])
    return ExitCode.SUCCESS if verdict.nice else ExitCode.NEGATIVE


# =============================================================================
# DIST
# =============================================================================


def cmd_dist(args) -> int:
    """Handle 'dist hab|half-split' command"""
    from .closeness import distance_to_half_split, distance_to_H_family

    settings = _settings(args)
    seed = _seed(args, settings)
    mode = _mode(args, settings)
    restarts = _pick(args.restarts, settings.analysis.distance_restarts)
    cap = settings.analysis.distance_exhaustive_max_n
    g = _load(args.collection)

    if args.family == "hab":
        report = distance_to_H_family(g, args.require_b_odd, mode, seed, restarts, cap)
    else:
        report = distance_to_half_split(g, mode, seed, restarts, cap)
    _emit(
        args,
        report.to_dict(),
        [f"distance: {report.cost}", f"normalized: {report.normalized}", f"exact: {report.exact}"],
    )
    return ExitCode.SUCCESS


# =============================================================================
# CERT
# =============================================================================


def cmd_cert_find(args) -> int:
    """Handle 'cert find' command"""
    from .closeness import find_independent_set_certificate, parity_certificate, save_certificate

    _settings(args)
    g = _load(args.collection)
    target = Target(args.target)
    certificate = None
    if args.kind in ("parity", "any") and target == Target.CYCLE and g.colors == g.n:
        certificate = parity_certificate(g)
    if certificate is None and args.kind in ("independent-set", "any"):
        certificate = find_independent_set_certificate(g, target)

    if certificate is None:
        _emit(args, {"certificate": None}, ["no certificate found"])
        return ExitCode.NEGATIVE
    if args.output:
        save_certificate(certificate, args.output)
    _emit(args, {"certificate": certificate.to_dict()}, [json.dumps(certificate.to_dict(), sort_keys=True)])
    return ExitCode.SUCCESS


def cmd_cert_check(args) -> int:
    """Handle 'cert check' command"""
    from .closeness import load_certificate, verify_certificate

    _settings(args)
    g = _load(args.collection)
    certificate = load_certificate(args.certificate)
    check = verify_certificate(g, certificate)
    _emit(args, check.to_dict(), [f"ok: {check.ok}", f"invariant: {check.invariant}", check.detail])
    if not check:
        print(f"certificate rejected: {check.invariant}: {check.detail}", file=sys.stderr)
        return ExitCode.NEGATIVE
    return ExitCode.SUCCESS


# =============================================================================
# ABSORB
# =============================================================================


def cmd_absorb_enumerate(args) -> int:
    """Handle 'absorb enumerate' command"""
    from .absorption import enumerate_absorbing_paths

    settings = _settings(args)
    ab = settings.absorption
    g = _load(args.collection)
    u = _pick(args.u, args.v)
    records = enumerate_absorbing_paths(
        g,
        args.color,
        args.v,
        u,
        frozenset(args.forbid_vertex or ()),
        frozenset(args.forbid_color or ()),
        ab.enumeration_exhaustive_max_n,
        ab.enumeration_samples,
        _seed(args, settings),
        args.limit,
    )
    _emit(
        args,
        {"count": len(records), "paths": [r.to_dict() for r in records]},
        [f"count: {len(records)}"] + [json.dumps(r.to_dict(), sort_keys=True) for r in records],
    )
    return ExitCode.SUCCESS if records else ExitCode.NEGATIVE


def cmd_absorb_check(args) -> int:
    """Handle 'absorb check' command"""
    from .absorption import check_absorbing_cycle
    from .core.codec import load_subgraph

    settings = _settings(args)
    g = _load(args.collection)
    cycle = load_subgraph(args.cycle)
    colors = args.colors if args.colors else list(range(g.colors))
    report = check_absorbing_cycle(
        g,
        cycle,
        colors,
        args.delta_prime,
        args.gamma_prime,
        args.delta,
        args.gamma,
        _pick(args.eps, settings.absorption.good_eps),
        _mode(args, settings),
        _seed(args, settings),
        settings.analysis.nice_restarts,
    )
    _emit(
        args,
        report.to_dict(),
        [
            f"holds: {report.holds}",
            f"condition (i): {report.condition_i}",
            f"condition (ii): {report.condition_ii}",
            f"exceptional pairs: {report.exceptional_pairs}",
            f"exceptional vertices: {report.exceptional_vertices}",
        ],
    )
    return ExitCode.SUCCESS if report.holds else ExitCode.NEGATIVE


def cmd_absorb_demo(args) -> int:
    """Handle 'absorb demo' command"""
    from .absorption import build_absorbing_cycle_demo
    from .core.codec import dump_subgraph

    settings = _settings(args)
    st, ab = settings.stability, settings.absorption
    g = _load(args.collection)
    demo = build_absorbing_cycle_demo(
        g,
        _pick(args.lam, ab.lam),
        _pick(args.gamma, st.gamma),
        _pick(args.alpha, st.alpha),
        _pick(args.eps, st.eps),
        _pick(args.delta, st.delta),
        _seed(args, settings),
        _mode(args, settings),
        _pick(args.restarts, settings.analysis.nice_restarts),
        ab.matching_rounds,
    )
    if demo.cycle is not None:
        _write(args.output, dump_subgraph(demo.cycle))
    lines = [f"stage: {demo.stage}", f"built: {demo.built}", demo.diagnosis]
    if demo.report is not None and demo.report.condition_i_targeted is False:
        lines.append("condition (i) not targeted: only (c, v, v) anchors were matched")
    _emit(args, demo.to_dict(), lines)
    return ExitCode.SUCCESS if demo.built else ExitCode.NEGATIVE


# =============================================================================
# VERIFY
# =============================================================================


def cmd_verify(args) -> int:
    """Handle 'verify extremal|dirac|boundary|matching' command"""
    from .harness import run_dirac_sampling, run_extremal_sweep, run_matching_lemma, run_stability_boundary
    from .persistence import JsonFileReportRepository

    settings = _settings(args)
    seed = _seed(args, settings)
    hs = settings.harness
    report_dir = args.report_dir or (hs.report_dir if args.save else None)
    repository = JsonFileReportRepository(report_dir) if report_dir else None
    workers = _pick(args.workers, hs.workers)

    if args.suite == "extremal":
        report = run_extremal_sweep(
            _pick(args.n, 9), args.n_min, _budget(args, settings), workers, hs.timing, repository
        )
    elif args.suite == "dirac":
        report = run_dirac_sampling(
            _pick(args.n, 8), _pick(args.trials, hs.dirac_trials), seed, _budget(args, settings),
            workers, hs.timing, repository,
        )
    elif args.suite == "boundary":
        st = settings.stability
        report = run_stability_boundary(
            _pick(args.n, 8),
            args.edit_grid or hs.edit_grid,
            seed,
            st.gamma,
            st.alpha,
            st.eps,
            st.delta,
            _mode(args, settings),
            _pick(args.restarts, 20),
            hs.timing,
            repository,
        )
    else:
        ab = settings.absorption
        report = run_matching_lemma(
            n=_pick(args.n, 400),
            t=_pick(args.t, 10),
            eps=ab.matching_eps,
            runs=_pick(args.trials, 10),
            seed=seed,
            rounds=ab.matching_rounds,
            timing=hs.timing,
            repository=repository,
        )

    text = [
        f"experiment: {report.experiment_id}",
        f"instances: {len(report.instances)}",
        f"findings: {len(report.findings)} {report.findings if report.findings else ''}".rstrip(),
        f"failures: {len(report.failures)} {report.failures if report.failures else ''}".rstrip(),
        "aggregates: " + json.dumps(report.aggregates, sort_keys=True),
    ]
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        print("\n".join(text))
    return ExitCode.SUCCESS if report.passed else ExitCode.NEGATIVE


def cmd_version(args) -> int:
    """Handle 'version' command"""
    print(f"rainbowham {__version__}")
    print("Transversal Hamiltonicity toolkit for graph collections")
    return ExitCode.SUCCESS


# =============================================================================
# PARSER
# =============================================================================


def _add_global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """Global flags; repeated on every subcommand so they may follow it"""
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int, default=default, help="Seed for randomized operations (default: 0)")
    parser.add_argument("--timeout-ms", type=int, default=default, help="Search time limit in milliseconds")
    parser.add_argument("--threads", type=int, default=default, help="Worker processes for the search")
    parser.add_argument(
        "--format", choices=["json", "text"], default=argparse.SUPPRESS if suppress else "text",
        help="Output format on stdout",
    )
    parser.add_argument("--config", type=str, default=default, help="Path to YAML configuration file")
    parser.add_argument(
        "--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=argparse.SUPPRESS if suppress else None, help="Set logging level",
    )
    parser.add_argument(
        "--log-format", choices=["text", "json"],
        default=argparse.SUPPRESS if suppress else None, help="Log output format",
    )


def _leaf(subparsers, name: str, help_text: str, func) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(name, help=help_text)
    _add_global_options(parser, suppress=True)
    parser.set_defaults(func=func)
    return parser


def _add_mode(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=[m.value for m in AnalysisMode], help="Subset search mode")
    parser.add_argument("--restarts", type=int, help="Local search restarts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rainbowham",
        description="Transversal (rainbow) Hamiltonicity of graph collections",
        epilog="Exit codes: 0 found/true, 1 definitive negative, 2 usage or input error, 3 budget exceeded",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_global_options(parser, suppress=False)

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # gen
    gen_parser = subparsers.add_parser("gen", help="Generate a collection")
    gen_sub = gen_parser.add_subparsers(dest="family", help="Collection family")
    two = _leaf(gen_sub, "two-cliques", "EC1: two disjoint near-equal cliques (one color)", cmd_gen)
    two.add_argument("--n", type=int, required=True)
    bip = _leaf(gen_sub, "bipartite", "EC2: complete near-balanced bipartite graph (one color)", cmd_gen)
    bip.add_argument("--n", type=int, required=True)
    hab = _leaf(gen_sub, "hab", "H_a^b: a EC1 copies and b EC2 copies", cmd_gen)
    hab.add_argument("--n", type=int, required=True)
    hab.add_argument("--a", type=int, required=True)
    hab.add_argument("--b", type=int, required=True)
    half = _leaf(gen_sub, "half-split", "s identical half-split graphs", cmd_gen)
    half.add_argument("--n", type=int, required=True)
    half.add_argument("--s", type=int, required=True)
    half.add_argument("--b-internal", choices=[b.value for b in BInternal], default=BInternal.COMPLETE.value)
    half.add_argument("--part-size", type=int, help="Size of the independent part (default floor(n/2)+1)")
    rnd = _leaf(gen_sub, "random", "Random graphs with a minimum degree floor", cmd_gen)
    rnd.add_argument("--n", type=int, required=True)
    rnd.add_argument("--d", type=int, required=True, help="Minimum degree of every color")
    rnd.add_argument("--s", type=int, help="Number of colors (default n)")
    per = _leaf(gen_sub, "perturb", "Toggle color-edges of an existing collection", cmd_gen)
    per.add_argument("input", help="Collection file")
    per.add_argument("--edits", type=int, required=True)
    for leaf in (two, bip, hab, half, rnd, per):
        leaf.add_argument("-o", "--output", help="Write the collection here instead of stdout")

    # solve
    solve_parser = subparsers.add_parser("solve", help="Search for a rainbow Hamilton cycle, path or matching")
    solve_sub = solve_parser.add_subparsers(dest="problem", help="Problem")
    for name, help_text in (
        ("hc", "Rainbow Hamilton cycle (n colors)"),
        ("hp", "Rainbow Hamilton path (n - 1 colors)"),
        ("matching", "Maximum rainbow matching"),
    ):
        leaf = _leaf(solve_sub, name, help_text, cmd_solve)
        leaf.add_argument("collection", help="Collection file")
        leaf.add_argument("-o", "--output", help="Write the witness here")
        leaf.add_argument("--no-parity-precheck", action="store_true", help="Always run the exact search")

    # analyze
    analyze_parser = subparsers.add_parser("analyze", help="Structural analysis")
    analyze_sub = analyze_parser.add_subparsers(dest="what", help="Analysis")
    stab = _leaf(analyze_sub, "stability", "Strongly / weakly / not stable", cmd_analyze)
    stab.add_argument("--gamma", type=float)
    stab.add_argument("--alpha", type=float)
    stab.add_argument("--eps", type=float)
    stab.add_argument("--delta", type=float)
    stab.add_argument("--mu", type=float, help="Also check that a stable verdict implies mu-niceness")
    col = _leaf(analyze_sub, "color", "Niceness, extremality and partition of one color", cmd_analyze)
    col.add_argument("--color", type=int, default=0)
    col.add_argument("--eps", type=float)
    nice = _leaf(analyze_sub, "collection-nice", "Niceness of the whole collection", cmd_analyze)
    nice.add_argument("--mu", type=float)
    for leaf in (stab, col, nice):
        leaf.add_argument("collection", help="Collection file")
        _add_mode(leaf)
        leaf.set_defaults(gamma=None, alpha=None, eps=None, delta=None, mu=None)

    # dist
    dist_parser = subparsers.add_parser("dist", help="Edit distance to an extremal family")
    dist_sub = dist_parser.add_subparsers(dest="family", help="Family")
    d_hab = _leaf(dist_sub, "hab", "Distance to the H_a^b family", cmd_dist)
    d_hab.add_argument("--require-b-odd", action="store_true")
    d_half = _leaf(dist_sub, "half-split", "Distance to half-split collections", cmd_dist)
    d_half.set_defaults(require_b_odd=False)
    for leaf in (d_hab, d_half):
        leaf.add_argument("collection", help="Collection file")
        _add_mode(leaf)

    # cert
    cert_parser = subparsers.add_parser("cert", help="Non-Hamiltonicity certificates")
    cert_sub = cert_parser.add_subparsers(dest="action", help="Action")
    find = _leaf(cert_sub, "find", "Search for a certificate", cmd_cert_find)
    find.add_argument("collection", help="Collection file")
    find.add_argument("--kind", choices=["parity", "independent-set", "any"], default="any")
    find.add_argument("--target", choices=[t.value for t in Target], default=Target.CYCLE.value)
    find.add_argument("-o", "--output", help="Write the certificate here")
    check = _leaf(cert_sub, "check", "Re-verify a certificate file", cmd_cert_check)
    check.add_argument("collection", help="Collection file")
    check.add_argument("certificate", help="Certificate file")

    # absorb
    absorb_parser = subparsers.add_parser("absorb", help="Absorbing paths and cycles")
    absorb_sub = absorb_parser.add_subparsers(dest="action", help="Action")
    enum = _leaf(absorb_sub, "enumerate", "List c-absorbing paths of (v, u)", cmd_absorb_enumerate)
    enum.add_argument("collection", help="Collection file")
    enum.add_argument("--color", type=int, required=True)
    enum.add_argument("--v", type=int, required=True)
    enum.add_argument("--u", type=int, help="Second anchor (default v)")
    enum.add_argument("--forbid-vertex", type=int, action="append")
    enum.add_argument("--forbid-color", type=int, action="append")
    enum.add_argument("--limit", type=int)
    chk = _leaf(absorb_sub, "check", "Evaluate the absorbing-cycle conditions", cmd_absorb_check)
    chk.add_argument("collection", help="Collection file")
    chk.add_argument("cycle", help="Cycle witness file")
    chk.add_argument("--colors", type=int, nargs="+", help="Color set (default all)")
    chk.add_argument("--delta-prime", type=float, required=True)
    chk.add_argument("--gamma-prime", type=float, required=True)
    chk.add_argument("--delta", type=float)
    chk.add_argument("--gamma", type=float)
    chk.add_argument("--eps", type=float, help="Good-vertex parameter")
    _add_mode(chk)
    demo = _leaf(absorb_sub, "demo", "Build an absorbing cycle in a strongly stable collection", cmd_absorb_demo)
    demo.add_argument("collection", help="Collection file")
    demo.add_argument("--lam", type=float)
    demo.add_argument("--gamma", type=float)
    demo.add_argument("--alpha", type=float)
    demo.add_argument("--eps", type=float)
    demo.add_argument("--delta", type=float)
    demo.add_argument("-o", "--output", help="Write the cycle here")
    _add_mode(demo)

    # verify
    verify_parser = subparsers.add_parser("verify", help="Run an experiment suite")
    verify_sub = verify_parser.add_subparsers(dest="suite", help="Suite")
    for name, help_text in (
        ("extremal", "Extremal non-Hamiltonicity sweep"),
        ("dirac", "Random collections above the Dirac threshold"),
        ("boundary", "Stability classification of perturbed extremal collections"),
        ("matching", "Random transversal matching guarantees"),
    ):
        leaf = _leaf(verify_sub, name, help_text, cmd_verify)
        leaf.add_argument("--n", type=int, help="Vertices (largest n for the extremal sweep)")
        leaf.add_argument("--report-dir", help="Persist the report as JSON in this directory")
        leaf.add_argument("--save", action="store_true", help="Persist to the configured report directory")
        leaf.add_argument("--workers", type=int, help="Processes running instances")
        leaf.set_defaults(n_min=4, trials=None, edit_grid=None, t=None, mode=None, restarts=None)
        if name == "extremal":
            leaf.add_argument("--n-min", type=int, default=4)
        elif name == "dirac":
            leaf.add_argument("--trials", type=int)
        elif name == "boundary":
            leaf.add_argument("--edit-grid", type=int, nargs="+")
            _add_mode(leaf)
        else:
            leaf.add_argument("--t", type=int, help="Number of host graphs")
            leaf.add_argument("--trials", type=int, help="Independent runs")

    version_parser = subparsers.add_parser("version", help="Show version information")
    version_parser.set_defaults(func=cmd_version)

    return parser


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse ``argv`` and run the subcommand.

    Returns:
        int: the process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ExitCode.SUCCESS if e.code in (0, None) else ExitCode.USAGE_ERROR

    if not hasattr(args, 'func'):
        parser.print_help(sys.stderr)
        return ExitCode.USAGE_ERROR

    try:
        from .config import load_settings

        args.settings = load_settings(args.config)
    except RainbowHamError as e:
        print(e.user_message(), file=sys.stderr)
        return ExitCode.USAGE_ERROR
    log_settings = args.settings.logging
    setup_logging(args.log_level or log_settings.level, args.log_format or log_settings.format)

    with TraceContext():
        try:
            return int(args.func(args))
        except RainbowHamError as e:
            logger.debug("Command failed: %s", json.dumps(e.to_dict(), default=str))
            print(e.user_message(), file=sys.stderr)
            return ExitCode.USAGE_ERROR
        except KeyboardInterrupt:
            print("Interrupted", file=sys.stderr)
            return ExitCode.USAGE_ERROR
        except Exception as e:
            logger.error(f"Unexpected error: {e}", exc_info=True)
            return ExitCode.USAGE_ERROR


def main():
    """Main CLI entry point"""
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
