"""Command-line interface.

Subcommands:

* ``analyze``: full report for one gamma vector, sections switched on by
  flags; ``--json`` emits a canonical machine-readable document (sorted
  keys, no locale dependence) whose byte-identity across runs is part of
  the contract.
* ``batch``: one gamma per line (``#`` comments allowed), failures isolated
  per line, optional process parallelism with ordered output.
* ``series``: constant-term series coefficients for one-negative-entry
  vectors, with an optional annihilation check.

Exit codes: 0 success, 1 internal error, 2 invalid input, 3 trivial system.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .errors import (
    GammaHGError,
    InvalidEntry,
    MultipleNegativeEntries,
    NotPrime,
    NotQuadrilateral,
    OppositePair,
    ParseError,
    PointOutsideCone,
    SumNotZero,
    TrivialSystem,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2
EXIT_TRIVIAL = 3

_INVALID_INPUT = (
    ParseError,
    InvalidEntry,
    SumNotZero,
    NotPrime,
    MultipleNegativeEntries,
    NotQuadrilateral,
    OppositePair,
    PointOutsideCone,
)


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_form(text: str, expected_dim: int) -> tuple[int, tuple[int, ...]]:
    """Parse the form syntax ``beta0;b1,...,bd``."""
    try:
        head, _, tail = text.partition(";")
        beta0 = int(head)
        beta = tuple(int(x) for x in tail.split(","))
    except ValueError as exc:
        raise ParseError(f"malformed form {text!r}: {exc}") from None
    if beta0 < 1:
        raise ParseError(f"form pole order must be >= 1 in {text!r}")
    if len(beta) != expected_dim:
        raise ParseError(
            f"form {text!r} has {len(beta)} exponents, model dimension is {expected_dim}"
        )
    return beta0, beta


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------


def build_report(gamma_text: str, opts: dict) -> dict:
    from .gamma import hg_params, parse_gamma, rank, volume

    g = parse_gamma(gamma_text)
    report: dict = {
        "gamma": list(g.entries),
        "reduced": g.is_reduced,
        "prime": g.is_prime,
        "volume": volume(g),
    }
    params = hg_params(g)
    report["parameters"] = {
        "alpha": [_frac_str(a) for a in params.alpha],
        "beta": [_frac_str(b) for b in params.beta],
    }
    report["rank"] = params.rank

    if opts.get("hodge"):
        from .hodge import hodge_report

        report["hodge"] = hodge_report(g)

    model = None
    need_model = (
        opts.get("model")
        or opts.get("cone")
        or opts.get("minimal_op")
        or opts.get("gkz_op")
        or opts.get("validate")
    )
    if need_model:
        from .toric import build_model, import_model

        if opts.get("model_matrix"):
            model = import_model(g, json.loads(opts["model_matrix"]))
        else:
            model = build_model(g)

    if opts.get("model"):
        md = model.to_json_dict()
        P = model.polytope
        md["newton"] = {
            "vertices": [list(model.m_columns[i]) for i in P.vertex_indices],
            "is_simplex": P.is_simplex,
            "interior_generators": [
                list(model.m_columns[i]) for i in P.interior_point_indices()
            ],
        }
        report["model"] = md

    if opts.get("cone"):
        from .cone import graded_generator_counts, interior_count

        counts = graded_generator_counts(model)
        report["cone"] = {
            "generator_counts": [
                {"pole_order": k, "face_dim": fd, "count": c}
                for (k, fd), c in sorted(counts.items())
            ],
            "interior_counts": [
                {"pole_order": k, "count": interior_count(model, k)}
                for k in range(1, model.d + 1)
            ],
        }

    basisdata = None
    if opts.get("minimal_op"):
        from .dwork import (
            build_basis,
            form_class,
            minimal_operator,
            weight_graded_dimension,
        )

        basisdata = build_basis(model)
        section = {}
        for form_text in opts["minimal_op"]:
            form = parse_form(form_text, model.d)
            op = minimal_operator(basisdata, form_class(form))
            section[form_text] = {
                "order": op.order,
                "operator": op.to_text(),
                "operator_json": op.to_json_list(),
            }
        report["minimal_operators"] = section
        report["cohomology"] = {
            "dimension": basisdata.dimension,
            "weight_dimensions": [
                {
                    "level": lvl,
                    "dimension": weight_graded_dimension(basisdata, lvl),
                }
                for lvl in range(model.d + 1, 2 * model.d + 1)
            ],
        }

    if opts.get("gkz_op"):
        from .ore import build_gkz_operator, cancel_parameters, solve_eta

        section = {}
        for form_text in opts["gkz_op"]:
            form = parse_form(form_text, model.d)
            eta = solve_eta(model, form)
            op, gkz = build_gkz_operator(g, eta)
            ca, cb = cancel_parameters(gkz.alpha_eta, gkz.beta_eta)
            section[form_text] = {
                "eta": list(eta),
                "order": op.order,
                "alpha_eta": [_frac_str(x) for x in gkz.alpha_eta],
                "beta_eta": [_frac_str(x) for x in gkz.beta_eta],
                "cancelled_alpha": [_frac_str(x) for x in ca],
                "cancelled_beta": [_frac_str(x) for x in cb],
                "operator": op.to_text(),
            }
        report["gkz_operators"] = section

    if opts.get("monodromy"):
        from .monodromy import levelt_triple, pseudoreflection_rank

        tri = levelt_triple(g)
        md = tri.to_json_dict()
        md["pseudoreflection_rank"] = pseudoreflection_rank(tri.h1)
        report["monodromy"] = md

    if opts.get("covering"):
        from .covering import quadrilateral_covering

        try:
            report["covering"] = quadrilateral_covering(g).to_json_dict()
        except (NotQuadrilateral, OppositePair) as exc:
            report["covering"] = {"error": exc.code, "message": str(exc)}

    if opts.get("series"):
        from .ore import build_hypergeometric
        from .series import annihilation_check, constant_term_series, hg_series

        n_terms = int(opts["series"])
        sec: dict = {"terms": n_terms}
        sec["hg_coefficients"] = hg_series(
            params.alpha, params.beta, n_terms
        ).coefficient_strings()
        if len(g.negatives()) == 1:
            cts = constant_term_series(g, n_terms)
            sec["constant_term_coefficients"] = cts.coefficient_strings()
            if n_terms >= params.rank + 5:
                op = build_hypergeometric(params.alpha, params.beta)
                sec["annihilated"] = annihilation_check(op, cts)
        report["series"] = sec

    if opts.get("validate"):
        report["validate"] = _validate_section(g, model)

    return report


def _validate_section(g, model) -> dict:
    import math

    from .hodge import hodge_polynomial
    from .monodromy import levelt_triple, pseudoreflection_rank
    from .toric import hessian_determinant, quasi_regularity_check

    out = {}
    out["hessian_ok"] = hessian_determinant(model) == -math.prod(g.entries)
    try:
        from .gamma import rank

        out["rank_identity_ok"] = sum(
            int(c) for c in hodge_polynomial(g).coeffs
        ) == rank(g)
    except GammaHGError as exc:
        out["rank_identity_ok"] = False
        out["rank_identity_error"] = exc.code
    out["quasi_regularity_ok"] = quasi_regularity_check(model)["ok"]
    tri = levelt_triple(g)
    out["pseudoreflection_ok"] = pseudoreflection_rank(tri.h1) == 1
    out["monodromy_product_ok"] = tri.product_is_identity()
    return out


def render_plain(report: dict, indent: int = 0) -> str:
    """Human-readable rendering carrying exactly the JSON content."""
    lines = []

    def walk(key, value, depth):
        pad = "  " * depth
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k in sorted(value):
                walk(k, value[k], depth + 1)
        elif isinstance(value, list):
            if value and isinstance(value[0], (dict, list)):
                lines.append(f"{pad}{key}:")
                for i, item in enumerate(value):
                    walk(f"[{i}]", item, depth + 1)
            else:
                lines.append(f"{pad}{key}: {value}")
        else:
            lines.append(f"{pad}{key}: {value}")

    for k in sorted(report):
        walk(k, report[k], indent)
    return "\n".join(lines)


def _report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _opts_from_args(args) -> dict:
    return {
        "hodge": args.hodge,
        "model": args.model,
        "cone": args.cone,
        "minimal_op": list(args.minimal_op or []),
        "gkz_op": list(args.gkz_op or []),
        "monodromy": args.monodromy,
        "covering": args.covering,
        "series": args.series,
        "validate": args.validate,
        "model_matrix": getattr(args, "model_matrix", None),
    }


def cmd_analyze(args) -> int:
    opts = _opts_from_args(args)
    report = build_report(args.gamma, opts)
    if args.json:
        print(_report_json(report))
    else:
        print(render_plain(report))
    return EXIT_OK


def _batch_line(payload) -> tuple[str, bool, str]:
    text, opts, as_json = payload
    try:
        report = build_report(text, opts)
        body = _report_json(report) if as_json else render_plain(report)
        return text, True, body
    except _INVALID_INPUT as exc:
        err = {"gamma_text": text, "error": exc.code, "message": str(exc)}
    except TrivialSystem as exc:
        err = {"gamma_text": text, "error": exc.code, "message": str(exc)}
    except GammaHGError as exc:
        err = {"gamma_text": text, "error": exc.code, "message": str(exc)}
    body = json.dumps(err, sort_keys=True, separators=(",", ":")) if as_json else (
        f"error [{err['error']}] for {text!r}: {err['message']}"
    )
    return text, False, body


def cmd_batch(args) -> int:
    opts = _opts_from_args(args)
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            raw_lines = fh.read().splitlines()
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    lines = []
    for line in raw_lines:
        body = line.split("#", 1)[0].strip()
        if body:
            lines.append(body)
    payloads = [(text, opts, args.json) for text in lines]
    if args.jobs > 1 and len(payloads) > 1:
        import concurrent.futures

        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_line, payloads))
    else:
        results = [_batch_line(p) for p in payloads]
    for text, ok, body in results:
        if not args.json and not ok:
            print(body)
        elif not args.json:
            print(f"# gamma {text}")
            print(body)
        else:
            print(body)
    return EXIT_OK


def cmd_series(args) -> int:
    from .gamma import hg_params, parse_gamma
    from .ore import build_hypergeometric
    from .series import annihilation_check, constant_term_series

    g = parse_gamma(args.gamma)
    cts = constant_term_series(g, args.terms)
    out: dict = {
        "gamma": list(g.entries),
        "terms": args.terms,
        "coefficients": cts.coefficient_strings(),
    }
    if args.check_annihilation:
        params = hg_params(g)
        op = build_hypergeometric(params.alpha, params.beta)
        out["annihilated"] = annihilation_check(op, cts)
    if args.json:
        print(_report_json(out))
    else:
        for i, c in enumerate(out["coefficients"]):
            print(f"t^{i}: {c}")
        if "annihilated" in out:
            print(f"annihilated: {out['annihilated']}")
    return EXIT_OK


def _add_section_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit canonical JSON")
    p.add_argument("--hodge", action="store_true", help="Hodge numbers section")
    p.add_argument("--model", action="store_true", help="toric model section")
    p.add_argument("--cone", action="store_true", help="cone census section")
    p.add_argument(
        "--minimal-op",
        action="append",
        metavar="FORM",
        help="minimal operator of the form 'beta0;b1,...,bd' (repeatable)",
    )
    p.add_argument(
        "--gkz-op",
        action="append",
        metavar="FORM",
        help="reduced torus operator for the form (repeatable)",
    )
    p.add_argument("--monodromy", action="store_true", help="Levelt triple section")
    p.add_argument("--covering", action="store_true", help="covering data (length 4)")
    p.add_argument(
        "--series", type=int, metavar="N", help="series section to order N"
    )
    p.add_argument("--validate", action="store_true", help="consistency checks")


def _allow_gamma_values(parser: argparse.ArgumentParser) -> None:
    # let values like "-5,-2,3,4" pass as arguments rather than options
    import re

    parser._negative_number_matcher = re.compile(r"^-\d+(,-?\d+)*$")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gammahg",
        description="Exact hypergeometric local-system data from gamma vectors",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyse a single gamma vector")
    pa.add_argument("--gamma", required=True, help="comma-separated entries")
    pa.add_argument(
        "--model-matrix",
        metavar="JSON",
        help="explicit model matrix A as a JSON list of rows",
    )
    _add_section_flags(pa)
    pa.set_defaults(func=cmd_analyze)

    pb = sub.add_parser("batch", help="analyse one gamma per line of a file")
    pb.add_argument("--file", required=True, help="input file, '#' comments allowed")
    pb.add_argument("--jobs", type=int, default=1, help="parallel processes")
    _add_section_flags(pb)
    pb.set_defaults(func=cmd_batch)

    ps = sub.add_parser("series", help="constant-term series of a one-negative vector")
    ps.add_argument("--gamma", required=True)
    ps.add_argument("--terms", type=int, required=True)
    ps.add_argument("--check-annihilation", action="store_true")
    ps.add_argument("--json", action="store_true")
    ps.set_defaults(func=cmd_series)
    for p in (parser, pa, pb, ps):
        _allow_gamma_values(p)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TrivialSystem as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_TRIVIAL
    except _INVALID_INPUT as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except GammaHGError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
