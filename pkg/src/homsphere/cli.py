"""Command-line front end with deterministic JSON and CSV output.

Every numeric field is emitted with 17 significant digits, so output is
byte-identical across runs and parses back to the exact same doubles.
Exit codes: 0 success, 2 invalid parameters, 3 truncation cap exceeded.
Warnings (for example suspicious cluster merges) go to stderr only.

An optional key=value config file (pointed to by the HOMSPHERE_CONFIG
environment variable) can set ``tol``, ``cluster_tol`` and ``k_cap``;
explicit flags override it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import acceptance
from .core import (
    GroupKind,
    MetricClass,
    MetricTriple,
    NonPositiveParameter,
    SpectrumTable,
    classify,
    normalize_triple,
)
from .geometry import (
    BoundViolation,
    EmptyProduct,
    ProductSpec,
    berger_lambda1_diam2_extrema,
    diameter,
    lambda1_diam2,
    product_estimate,
    scalar_curvature,
    volume,
    yamabe_gap,
)
from .rigidity import invariants, isospectral_check, recover_triple
from .spectrum import (
    DEFAULT_CLUSTER_TOL,
    DEFAULT_K_CAP,
    DEFAULT_SOLVER_TOL,
    CutoffTooLarge,
    berger_spectrum_up_to,
    lambda1_closed,
    spectrum_up_to,
)

SCHEMA_VERSION = "1"
CONFIG_ENV = "HOMSPHERE_CONFIG"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_BAD_PARAMS = 2
EXIT_CUTOFF = 3


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _emit_json(obj, out: list[str]) -> None:
    """Serialize with insertion-ordered keys and 17-significant-digit floats."""
    if isinstance(obj, dict):
        out.append("{")
        for i, (key, val) in enumerate(obj.items()):
            if i:
                out.append(",")
            out.append(json.dumps(key))
            out.append(":")
            _emit_json(val, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, val in enumerate(obj):
            if i:
                out.append(",")
            _emit_json(val, out)
        out.append("]")
    elif isinstance(obj, bool) or obj is None:
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_fmt(obj))
    else:
        out.append(json.dumps(obj))


def _record_to_json(record: dict) -> str:
    parts: list[str] = []
    _emit_json(record, parts)
    return "".join(parts)


def _flatten(prefix: str, obj, rows: list[tuple[str, str]]) -> None:
    if isinstance(obj, dict):
        for key, val in obj.items():
            _flatten(f"{prefix}.{key}" if prefix else str(key), val, rows)
    elif isinstance(obj, (list, tuple)):
        for i, val in enumerate(obj):
            _flatten(f"{prefix}[{i}]", val, rows)
    elif isinstance(obj, float):
        rows.append((prefix, _fmt(obj)))
    else:
        rows.append((prefix, str(obj)))


def _record_to_csv(record: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    results = record.get("results", {})
    if "entries" in results:
        writer.writerow(["value", "multiplicity", "k_sources"])
        for entry in results["entries"]:
            writer.writerow(
                [
                    _fmt(entry["value"]),
                    entry["multiplicity"],
                    ";".join(str(k) for k in entry["k_sources"]),
                ]
            )
    else:
        writer.writerow(["key", "value"])
        rows: list[tuple[str, str]] = []
        _flatten("", results, rows)
        for key, val in rows:
            writer.writerow([key, val])
    return buf.getvalue().rstrip("\n")


def _print_record(record: dict, fmt: str) -> None:
    if fmt == "csv":
        print(_record_to_csv(record))
    else:
        print(_record_to_json(record))


def _load_config() -> dict[str, float]:
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    out: dict[str, float] = {}
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, _, value = line.partition("=")
            out[key.strip().replace("-", "_")] = float(value.strip())
    return out


def _resolve(args: argparse.Namespace) -> tuple[float, float, int]:
    """tol, cluster_tol, k_cap with precedence flags > config file > defaults."""
    cfg = _load_config()
    tol = args.tol if args.tol is not None else cfg.get("tol", DEFAULT_SOLVER_TOL)
    cluster = (
        args.cluster_tol
        if args.cluster_tol is not None
        else cfg.get("cluster_tol", DEFAULT_CLUSTER_TOL)
    )
    cap = args.k_cap if args.k_cap is not None else int(cfg.get("k_cap", DEFAULT_K_CAP))
    return float(tol), float(cluster), int(cap)


def _group(name: str) -> GroupKind:
    return GroupKind(name.lower())


def _triple_inputs(t: MetricTriple, g: GroupKind) -> dict:
    return {"a": t.a, "b": t.b, "c": t.c, "group": g.value}


def _table_payload(table: SpectrumTable) -> dict:
    return {
        "truncation_bound": table.truncation_bound,
        "entries": [
            {
                "value": entry.value,
                "multiplicity": entry.multiplicity,
                "k_sources": list(ks),
            }
            for entry, ks in zip(table.entries, table.k_sources)
        ],
        "eigenvalues_counted": table.counting_function(table.truncation_bound),
    }


def _parse_triple_arg(text: str) -> MetricTriple:
    parts = text.split(",")
    if len(parts) != 3:
        raise NonPositiveParameter(f"expected 'a,b,c', got {text!r}")
    return normalize_triple(*(float(p) for p in parts))


def _cmd_spectrum(args: argparse.Namespace) -> int:
    tol, cluster_tol, k_cap = _resolve(args)
    t = normalize_triple(args.a, args.b, args.c)
    g = _group(args.group)
    if args.berger_closed_form:
        cls = classify(t)
        if cls is MetricClass.GENERIC:
            print(
                "error: --berger-closed-form needs two equal parameters",
                file=sys.stderr,
            )
            return EXIT_BAD_PARAMS
        # the closed form covers g_(x,y,y); a=b>c realizes it as (c, b, b)
        x, y = (t.c, t.b) if cls is MetricClass.BERGER_AB else (t.a, t.b)
        table = berger_spectrum_up_to(
            args.lambda_max, x, y, g, cluster_tol=cluster_tol, k_cap=k_cap
        )
    else:
        table = spectrum_up_to(
            args.lambda_max, t, g, tol=tol, cluster_tol=cluster_tol, k_cap=k_cap
        )
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": "spectrum",
        "inputs": {
            **_triple_inputs(t, g),
            "lambda_max": args.lambda_max,
            "berger_closed_form": bool(args.berger_closed_form),
        },
        "results": _table_payload(table),
    }
    _print_record(record, args.format)
    return EXIT_OK


def _cmd_lambda1(args: argparse.Namespace) -> int:
    t = normalize_triple(args.a, args.b, args.c)
    g = _group(args.group)
    res = lambda1_closed(t, g)
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": "lambda1",
        "inputs": _triple_inputs(t, g),
        "results": {
            "value": res.value,
            "multiplicity": res.multiplicity,
            "regime": res.regime.value,
        },
    }
    _print_record(record, args.format)
    return EXIT_OK


def _cmd_geometry(args: argparse.Namespace) -> int:
    t = normalize_triple(args.a, args.b, args.c)
    g = _group(args.group)
    d = diameter(t, g)
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": "geometry",
        "inputs": _triple_inputs(t, g),
        "results": {
            "classification": classify(t).value,
            "scalar_curvature": scalar_curvature(t),
            "volume": volume(t, g),
            "diameter": {
                "lower": d.lower,
                "upper": d.upper,
                "exact": d.exact,
            },
            "yamabe_gap": yamabe_gap(t, g),
        },
    }
    _print_record(record, args.format)
    return EXIT_OK


def _cmd_estimate(args: argparse.Namespace) -> int:
    if args.berger_extrema:
        report = berger_lambda1_diam2_extrema()
        results = {
            "min": report.min_value,
            "min_triple": list(report.min_triple.as_tuple()),
            "max": report.max_value,
            "max_triple": list(report.max_triple.as_tuple()),
        }
        record = {
            "schema_version": SCHEMA_VERSION,
            "command": "estimate",
            "inputs": {"berger_extrema": True},
            "results": results,
        }
        _print_record(record, args.format)
        return EXIT_OK
    if args.a is None or args.b is None or args.c is None or args.group is None:
        print("error: give --a --b --c --group or --berger-extrema", file=sys.stderr)
        return EXIT_BAD_PARAMS
    t = normalize_triple(args.a, args.b, args.c)
    g = _group(args.group)
    lo, hi = lambda1_diam2(t, g)
    d = diameter(t, g)
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": "estimate",
        "inputs": _triple_inputs(t, g),
        "results": {
            "lambda1": lambda1_closed(t, g).value,
            "diameter": {"lower": d.lower, "upper": d.upper, "exact": d.exact},
            "lambda1_diam2": {"lower": lo, "upper": hi, "exact_point": lo == hi},
        },
    }
    _print_record(record, args.format)
    return EXIT_OK


def _cmd_rigidity(args: argparse.Namespace) -> int:
    tol, cluster_tol, k_cap = _resolve(args)
    t = normalize_triple(args.a, args.b, args.c)
    g = _group(args.group)
    inv = invariants(t, g)
    recovered = recover_triple(inv, g)
    roundtrip_err = max(
        abs(x - y) / max(1.0, abs(y))
        for x, y in zip(recovered.as_tuple(), t.as_tuple())
    )
    results = {
        "invariants": {
            "vol_param": inv.vol_param,
            "scalar_curvature": inv.scal,
            "lambda1": inv.lambda1,
            "multiplicity": inv.mult1,
        },
        "recovered_triple": list(recovered.as_tuple()),
        "roundtrip_rel_err": roundtrip_err,
    }
    inputs = _triple_inputs(t, g)
    if args.compare is not None:
        other = _parse_triple_arg(args.compare)
        lam_max = args.lambda_max
        if lam_max is None:
            lam_max = 1.2 * max(
                lambda1_closed(t, g).value, lambda1_closed(other, g).value
            )
        outcome = isospectral_check(t, other, g, lam_max)
        inputs["compare"] = list(other.as_tuple())
        results["isospectral"] = {
            "verdict": outcome.verdict.value,
            "lambda_max": lam_max,
            "first_differing_index": outcome.mu_index,
            "first_differing_values": list(outcome.values) if outcome.values else None,
        }
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": "rigidity",
        "inputs": inputs,
        "results": results,
    }
    _print_record(record, args.format)
    return EXIT_OK


def _cmd_product(args: argparse.Namespace) -> int:
    su2 = tuple(_parse_triple_arg(arg) for arg in (args.su2 or []))
    so3 = tuple(_parse_triple_arg(arg) for arg in (args.so3 or []))
    est = product_estimate(ProductSpec(su2_factors=su2, so3_factors=so3))
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": "product",
        "inputs": {
            "su2": [list(t.as_tuple()) for t in su2],
            "so3": [list(t.as_tuple()) for t in so3],
        },
        "results": {
            "lambda1": est.lambda1,
            "diam2": {"lower": est.diam2_lower, "upper": est.diam2_upper},
            "product": {"lower": est.product_lower, "upper": est.product_upper},
            "cap": est.cap,
        },
    }
    _print_record(record, args.format)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    results = acceptance.run_all()
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_OK if not failed else EXIT_FAILURE


def _add_triple_flags(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--a", type=float, required=required)
    parser.add_argument("--b", type=float, required=required)
    parser.add_argument("--c", type=float, required=required)
    parser.add_argument(
        "--group", choices=["su2", "so3"], required=required,
        help="su2 for the 3-sphere, so3 for real projective 3-space",
    )


def _add_numeric_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=None, help="eigensolver tolerance")
    parser.add_argument(
        "--cluster-tol", type=float, default=None, help="multiplicity clustering tolerance"
    )
    parser.add_argument("--k-cap", type=int, default=None, help="hard cap on irrep blocks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homsphere",
        description=(
            "Laplace-Beltrami spectra, diameters, and spectral rigidity of "
            "homogeneous metrics on the 3-sphere and projective 3-space."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    spectrum_p = sub.add_parser("spectrum", help="truncated spectrum of one metric")
    _add_triple_flags(spectrum_p)
    spectrum_p.add_argument("--lambda-max", type=float, required=True)
    spectrum_p.add_argument(
        "--berger-closed-form",
        action="store_true",
        help="use the closed form (requires two equal parameters)",
    )
    spectrum_p.add_argument("--format", choices=["json", "csv"], default="json")
    _add_numeric_flags(spectrum_p)
    spectrum_p.set_defaults(func=_cmd_spectrum)

    lambda1_p = sub.add_parser("lambda1", help="closed-form lowest positive eigenvalue")
    _add_triple_flags(lambda1_p)
    lambda1_p.add_argument("--format", choices=["json", "csv"], default="json")
    lambda1_p.set_defaults(func=_cmd_lambda1)

    geometry_p = sub.add_parser("geometry", help="curvature, volume, diameter, gap")
    _add_triple_flags(geometry_p)
    geometry_p.add_argument("--format", choices=["json", "csv"], default="json")
    geometry_p.set_defaults(func=_cmd_geometry)

    estimate_p = sub.add_parser("estimate", help="lambda1 * diam^2 estimates")
    _add_triple_flags(estimate_p, required=False)
    estimate_p.add_argument(
        "--berger-extrema",
        action="store_true",
        help="sweep the two-equal-parameter families and report the extrema",
    )
    estimate_p.add_argument("--format", choices=["json", "csv"], default="json")
    estimate_p.set_defaults(func=_cmd_estimate)

    rigidity_p = sub.add_parser("rigidity", help="spectral invariants and inversion")
    _add_triple_flags(rigidity_p)
    rigidity_p.add_argument(
        "--compare", type=str, default=None, metavar="A,B,C",
        help="second triple for an isospectrality comparison",
    )
    rigidity_p.add_argument("--lambda-max", type=float, default=None)
    rigidity_p.add_argument("--format", choices=["json", "csv"], default="json")
    _add_numeric_flags(rigidity_p)
    rigidity_p.set_defaults(func=_cmd_rigidity)

    product_p = sub.add_parser("product", help="estimates for products of factors")
    product_p.add_argument(
        "--su2", action="append", metavar="A,B,C", help="add one SU(2) factor"
    )
    product_p.add_argument(
        "--so3", action="append", metavar="A,B,C", help="add one SO(3) factor"
    )
    product_p.add_argument("--format", choices=["json", "csv"], default="json")
    product_p.set_defaults(func=_cmd_product)

    verify_p = sub.add_parser("verify", help="run the acceptance suite")
    verify_p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CutoffTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CUTOFF
    except (NonPositiveParameter, EmptyProduct, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except BoundViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
