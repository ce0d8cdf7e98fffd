"""
facemagic command-line interface

Commands:
- construct   HBBL / VBBL labeling from a factorization sequence
- verify      magic value, digon sums, class, balance and standardness
- transform   elementary operations, complement, symmetries, standardize
- enumerate   exhaustive search report
- count       counting formulas and bounds
- render      ASCII / table / CSV views
- census      bicentral equivalence class sizes
- conjecture  enumerated standard labelings vs constructions

Exit codes: 0 success, 2 usage, 3 validation failure, 4 parse failure,
5 node budget exhausted (the flagged-incomplete report is still printed).
"""

import argparse
import sys
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from facemagic.config import LoggingConfig, settings
from facemagic.errors import DocumentParseError, FaceMagicError, LabelingValidationError
from facemagic.models import FactorizationSequence, Labeling, Symmetry
from facemagic.schemas.documents import (
    LabelingDocument,
    RunReport,
    dump_json,
    parse_csv,
    parse_document,
    render_ascii,
    render_csv,
    render_document,
    render_table,
)
from facemagic.services import construct, counting, labeling, search, transform
from facemagic.utils.logger import logger, setup_logging


EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_PARSE = 4
EXIT_BUDGET = 5


# ============================================================
# I/O Helpers
# ============================================================

def _value_arg(text: str) -> Union[str, int]:
    if text == "all":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'all' or an integer, got {text!r}") from None


def _read_labeling(path: str, file_order: str) -> Tuple[Labeling, LabelingDocument]:
    """Load (labeling, document) from a document or .csv file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentParseError(f"cannot read {path}: {e.strerror}") from None
    if path.endswith(".csv"):
        L = parse_csv(text, file_order)  # type: ignore[arg-type]
        return L, LabelingDocument.from_labeling(L)
    doc = parse_document(text, file_order)  # type: ignore[arg-type]
    return doc.to_labeling(), doc


def _write(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
        logger.info("Wrote document", path=output)
    else:
        sys.stdout.write(text)


def _emit_report(report: RunReport) -> int:
    print(dump_json(report).decode())
    return report.exit_code


def _document_for(L: Labeling, **meta: Any) -> LabelingDocument:
    """Re-verify and attach the magic value before anything is written."""
    report = labeling.verify(L)
    return LabelingDocument.from_labeling(L, S=report.S, **meta)


# ============================================================
# Commands
# ============================================================

def cmd_construct(args: argparse.Namespace) -> int:
    seq = FactorizationSequence.parse(args.orientation, args.sequence)
    L = construct.build(seq)
    report = labeling.verify(L)
    if not report.is_magic or report.value_class != "S_plus":
        raise LabelingValidationError(f"Construction {seq} did not verify: {report}")
    doc = _document_for(
        L,
        generator="hbbl" if seq.orientation == "horizontal" else "vbbl",
        sequence=",".join(map(str, seq.factors)),
    )
    _write(render_document(doc, args.file_order), args.output)
    return EXIT_OK


def _verify_result(L: Labeling) -> Dict[str, Any]:
    report = labeling.verify(L)
    result: Dict[str, Any] = report.model_dump()
    result["bicentrally_balanced"] = None
    result["standard"] = None
    if L.dims.is_odd:
        balanced = report.is_magic and labeling.is_bicentrally_balanced(L)
        result["bicentrally_balanced"] = balanced
        result["center_label"] = labeling.center_label(L)
        if balanced:
            result["standard"] = labeling.is_standard(L)
            result["row_pair_sums"] = labeling.row_pair_sums(L)
    return result


def cmd_verify(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    L, doc = _read_labeling(args.path, args.file_order)
    result = _verify_result(L)

    exit_code = EXIT_OK
    verdict = "magic" if result["is_magic"] else "not-magic"
    if doc.S is not None and doc.S != result["S"]:
        verdict = "declared-S-mismatch"
        exit_code = EXIT_VALIDATION

    return _emit_report(RunReport(
        command="verify",
        config={"path": args.path, "file_order": args.file_order, "m": L.dims.m, "n": L.dims.n},
        result=result,
        verdict=verdict,
        timings_ms={"total": round((time.perf_counter() - start) * 1000, 3)},
        exit_code=exit_code,
    ))


def _transform_op(args: argparse.Namespace) -> Callable[[Labeling], Labeling]:
    if args.standardize:
        return transform.standardize
    if args.complement:
        return labeling.complement
    if args.swap_cols is not None:
        mask = transform.ColumnSwapMask.parse(args.swap_cols)
        return lambda L: transform.swap_columns(L, mask)
    if args.swap_rows is not None:
        rmask = transform.RowSwapMask.parse(args.swap_rows)
        return lambda L: transform.swap_rows(L, rmask)
    if args.perm_cols is not None:
        eta = transform.ColumnPairPermutation.parse(args.perm_cols)
        return lambda L: transform.permute_column_pairs(L, eta)
    if args.perm_rows is not None:
        kappa = transform.RowPairPermutation.parse(args.perm_rows)
        return lambda L: transform.permute_row_pairs(L, kappa)
    sym = Symmetry.parse(args.symmetry)
    return lambda L: labeling.apply_symmetry_labeling(sym, L)


def cmd_transform(args: argparse.Namespace) -> int:
    L, doc = _read_labeling(args.path, args.file_order)
    before = labeling.verify(L)
    result = _transform_op(args)(L)
    after = labeling.verify(result)
    if before.is_magic and not after.is_magic:
        raise LabelingValidationError("Transformed labeling is no longer C4-face-magic")
    out = LabelingDocument.from_labeling(
        result, S=after.S, generator=doc.generator, sequence=doc.sequence
    )
    _write(render_document(out, args.file_order), args.output)
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    cfg = search.SearchConfig.from_settings(
        args.m,
        args.n,
        value_filter=args.value,
        up_to_symmetry=args.up_to_symmetry,
        pruning=args.pruning,
        workers=args.workers,
        max_nodes=args.max_nodes,
    )
    report = search.enumerate_all(cfg)

    if args.emit_dir:
        out_dir = Path(args.emit_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for S, counts in report.values.items():
            for k, rep in enumerate(counts.representatives, start=1):
                doc = LabelingDocument(m=cfg.m, n=cfg.n, labels=list(rep), S=S, generator="enumerate")
                (out_dir / f"S{S}_{k:05d}.txt").write_text(render_document(doc), encoding="utf-8")
        logger.info("Wrote representatives", directory=str(out_dir))

    return _emit_report(RunReport(
        command="enumerate",
        config=cfg.model_dump(),
        result={
            "counts": report.counts(),
            "total": report.total(),
            "values": {
                S: {"raw": v.raw, "up_to_symmetry": v.up_to_symmetry, "orbit_sizes": v.orbit_sizes}
                for S, v in report.values.items()
            },
            "complete": report.complete,
            "nodes": report.nodes,
            "group": report.group,
        },
        verdict="complete" if report.complete else "incomplete",
        timings_ms={"search": report.wall_time_ms},
        exit_code=EXIT_OK if report.complete else EXIT_BUDGET,
    ))


def cmd_count(args: argparse.Namespace) -> int:
    m, n = args.m, args.n
    result = {
        "tau_mn": counting.tau(m, n),
        "tau_nm": counting.tau(n, m),
        "beta_m": counting.beta(m),
        "beta_n": counting.beta(n),
        "count_value_mid": counting.count_value_mid(m, n),
        "lower_bound_value_plus": counting.lower_bound_value_plus(m, n),
        "lower_bound_value_minus": counting.lower_bound_value_minus(m, n),
        "lower_bound_total": counting.lower_bound_total(m, n),
    }
    return _emit_report(RunReport(command="count", config={"m": m, "n": n}, result=result))


def cmd_render(args: argparse.Namespace) -> int:
    L, _ = _read_labeling(args.path, args.file_order)
    if args.format == "csv":
        text = render_csv(L, args.row_order or "bottom-up")
    elif args.format == "table":
        text = render_table(L, args.row_order or "top-down")
    else:
        text = render_ascii(L, args.row_order or "top-down")
    _write(text, args.output)
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    workers = args.workers or settings.search.workers
    report = search.bicentral_equivalence_census(
        args.m, args.n, source=args.source, max_nodes=args.max_nodes, workers=workers
    )
    return _emit_report(RunReport(
        command="census",
        config={"m": args.m, "n": args.n, "source": args.source, "workers": workers},
        result=report.model_dump(),
        verdict="complete" if report.complete else "incomplete",
        timings_ms={"total": round((time.perf_counter() - start) * 1000, 3)},
        exit_code=EXIT_OK if report.complete else EXIT_BUDGET,
    ))


def cmd_conjecture(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    workers = args.workers or settings.search.workers
    report = search.conjecture_check(
        args.m, args.n, max_nodes=args.max_nodes, workers=workers, pruning=args.pruning
    )
    return _emit_report(RunReport(
        command="conjecture",
        config={"m": args.m, "n": args.n, "workers": workers, "pruning": args.pruning},
        result=report.model_dump(),
        verdict=report.verdict,
        timings_ms={"total": round((time.perf_counter() - start) * 1000, 3)},
        exit_code=EXIT_BUDGET if report.verdict == "inconclusive" else EXIT_OK,
    ))


# ============================================================
# Argument Parsing
# ============================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="facemagic",
        description="C4-face-magic labelings of projective grid graphs",
    )
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_file_order(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--file-order", choices=["bottom-up", "top-down"], default="bottom-up",
            help="row order of label blocks (bottom-up: row j=1 first)",
        )

    def add_dims(p: argparse.ArgumentParser) -> None:
        p.add_argument("--m", type=int, required=True, help="number of columns")
        p.add_argument("--n", type=int, required=True, help="number of rows")

    def add_search_opts(p: argparse.ArgumentParser) -> None:
        p.add_argument("--workers", type=int, default=None, help="default: FACEMAGIC_WORKERS")
        p.add_argument("--max-nodes", type=int, default=None, help="node budget")

    p = sub.add_parser("construct", help="build an HBBL / VBBL labeling")
    p.add_argument("--orientation", choices=["horizontal", "vertical"], default="horizontal")
    p.add_argument("--sequence", required=True, help="comma-separated factors, e.g. 3,3,3,3")
    p.add_argument("--output", default=None)
    add_file_order(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a labeling document")
    p.add_argument("path")
    add_file_order(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", help="apply one operation to a labeling document")
    p.add_argument("path")
    ops = p.add_mutually_exclusive_group(required=True)
    ops.add_argument("--standardize", action="store_true")
    ops.add_argument("--complement", action="store_true")
    ops.add_argument("--swap-cols", metavar="MASK", help="alpha over 1..m0, e.g. 10 or 1,0")
    ops.add_argument("--swap-rows", metavar="MASK", help="delta over 1..n0")
    ops.add_argument("--perm-cols", metavar="PERM", help="eta over 1..m0, e.g. 3,2,1,4")
    ops.add_argument("--perm-rows", metavar="PERM", help="kappa over 1..n0")
    ops.add_argument("--symmetry", metavar="TAG", help="R0 R90 R180 R270 H V D+ D-")
    p.add_argument("--output", default=None)
    add_file_order(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("enumerate", help="exhaustive search")
    add_dims(p)
    p.add_argument("--value", type=_value_arg, default="all", help="'all' or a magic value S")
    p.add_argument("--up-to-symmetry", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--pruning", choices=["pure", "lemma"], default=None)
    p.add_argument("--emit-dir", default=None, help="write canonical representatives here")
    add_search_opts(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", help="counting formulas for odd m, n")
    add_dims(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("render", help="render a labeling document")
    p.add_argument("path")
    p.add_argument("--format", choices=["ascii", "table", "csv"], default="ascii")
    p.add_argument("--row-order", choices=["bottom-up", "top-down"], default=None)
    p.add_argument("--output", default=None)
    add_file_order(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("census", help="bicentral equivalence class sizes")
    add_dims(p)
    p.add_argument("--source", choices=["enumeration", "constructed"], default="enumeration")
    add_search_opts(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("conjecture", help="standard labelings vs HBBL/VBBL")
    add_dims(p)
    p.add_argument("--pruning", choices=["pure", "lemma"], default="lemma")
    add_search_opts(p)
    p.set_defaults(func=cmd_conjecture)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.log_level:
        settings.logging = LoggingConfig(level=args.log_level, format=settings.logging.format)
    setup_logging()

    try:
        return int(args.func(args))
    except DocumentParseError as e:
        logger.error("Document parse failure", error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (FaceMagicError, ValidationError) as e:
        logger.error("Validation failure", command=args.command, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
