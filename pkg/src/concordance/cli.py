"""Command-line front door: knot-file ingestion, subcommands, and report
emission.

Knot files are JSON objects {"name": ..., "seifert": [[...], ...]} with an
optional "infections" list whose companions are inline knot objects or
string references to other knot files (resolved relative to the referencing
file, cycles rejected).  Reports are emitted as human-readable text or, with
--json, as canonical JSON that round-trips losslessly; identical inputs give
byte-identical JSON except for the timestamp, which --no-timestamp drops.

Exit codes: 0 success, 1 computation succeeded but a certificate is invalid,
2 input or usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__, covers, family, laurent, plots, seifert, signature
from .family import InfectionCurve, KnotDescription
from .laurent import LaurentPoly


class ParseError(ValueError):
    """Malformed knot or polynomial input."""


class CyclicReference(ValueError):
    """Companion file references form a cycle."""


# ---------------------------------------------------------------------------
# knot files


def _json_loads(data) -> object:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _knot_from_obj(obj, resolver, seen: frozenset, default_name: str = "") -> KnotDescription:
    if not isinstance(obj, dict):
        raise ParseError("a knot must be a JSON object with a 'seifert' matrix")
    if "seifert" not in obj:
        raise ParseError("knot object is missing the 'seifert' key")
    matrix = obj["seifert"]
    if not isinstance(matrix, list) or any(not isinstance(r, list) for r in matrix):
        raise ParseError("'seifert' must be a list of integer rows")
    base = seifert.validate(matrix)
    name = obj.get("name", default_name)
    infections = []
    for entry in obj.get("infections", ()):
        if not isinstance(entry, dict) or "band" not in entry or "companion" not in entry:
            raise ParseError("each infection needs 'band' and 'companion'")
        companion = entry["companion"]
        if isinstance(companion, str):
            if resolver is None:
                raise ParseError(
                    f"companion reference {companion!r} needs a file resolver"
                )
            kd = resolver(companion, seen)
        else:
            kd = _knot_from_obj(companion, resolver, seen)
        curve = InfectionCurve(int(entry["band"]), entry.get("tag", kd.name))
        infections.append((curve, kd))
    return KnotDescription(base, tuple(infections), name)


def parse_knot_file(text, *, resolver=None) -> KnotDescription:
    """Parse a knot file into a validated description.

    Companion string references are resolved through the optional resolver
    callback (ref, seen) -> KnotDescription; without one they are rejected.
    """
    return _knot_from_obj(_json_loads(text), resolver, frozenset())


def _file_resolver(directory: Path):
    def resolve(ref: str, seen: frozenset) -> KnotDescription:
        path = (directory / ref).resolve()
        key = str(path)
        if key in seen:
            raise CyclicReference(f"companion reference cycle through {path}")
        try:
            data = path.read_bytes()
        except OSError as exc:
            raise ParseError(f"cannot read companion file {path}: {exc.strerror}") from exc
        return _knot_from_obj(
            _json_loads(data), _file_resolver(path.parent), seen | {key}, path.stem
        )

    return resolve


def _load_knot(path_str: str) -> tuple[KnotDescription, str]:
    path = Path(path_str)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    digest = "sha256:" + hashlib.sha256(data).hexdigest()
    kd = _knot_from_obj(
        _json_loads(data),
        _file_resolver(path.resolve().parent),
        frozenset({str(path.resolve())}),
        path.stem,
    )
    return kd, digest


def _load_delta_input(path_str: str) -> tuple[str, LaurentPoly, str]:
    """Read either a knot file (Alexander polynomial computed from the
    Seifert matrix) or a polynomial file {"name": ..., "delta": {...}}."""
    path = Path(path_str)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    digest = "sha256:" + hashlib.sha256(data).hexdigest()
    obj = _json_loads(data)
    if isinstance(obj, dict) and "delta" in obj:
        delta = laurent.normalize_alexander(LaurentPoly.from_json(obj["delta"]))
        return obj.get("name", path.stem), delta, digest
    kd = _knot_from_obj(obj, _file_resolver(path.resolve().parent),
                        frozenset({str(path.resolve())}), path.stem)
    return kd.name, seifert.alexander_poly(family.seifert_matrix(kd)), digest


def _params_digest(**params) -> str:
    blob = json.dumps({k: str(v) for k, v in params.items()}, sort_keys=True)
    return "sha256:" + hashlib.sha256(blob.encode()).hexdigest()


# ---------------------------------------------------------------------------
# argument parsing


def _fraction_arg(raw: str) -> Fraction:
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {raw!r}")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--json", action="store_true", help="emit the report as canonical JSON")
    sub.add_argument("--no-timestamp", action="store_true",
                     help="omit the timestamp for byte-identical reruns")
    sub.add_argument("--tolerance", type=float, default=signature.DEFAULT_GAP_TOL,
                     help="eigenvalue zero-gap tolerance (default 1e-9)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="concordance",
        description="Exact knot concordance invariants from Seifert matrices.",
    )
    parser.add_argument("--version", action="version", version=f"concordance {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("invariants", help="Alexander polynomial, Arf, signature, genus")
    p.add_argument("knot_file")
    _add_common(p)

    p = subs.add_parser("signature", help="Levine-Tristram step function and its integral")
    p.add_argument("knot_file")
    p.add_argument("--csv", metavar="PATH", help="write sampled (theta, sigma) values")
    p.add_argument("--plot", metavar="PATH", help="render the step function to an image file")
    p.add_argument("--samples", type=int, default=512, help="sample count for --csv (default 512)")
    _add_common(p)

    p = subs.add_parser("covers", help="orders of branched cyclic cover homology")
    p.add_argument("input_file", help="knot file or polynomial file with a 'delta' key")
    p.add_argument("--max-n", type=int, default=27,
                   help="scan prime powers up to this bound (default 27)")
    _add_common(p)

    p = subs.add_parser("livingston", help="cyclotomic cover classification")
    p.add_argument("input_file", help="knot file or polynomial file with a 'delta' key")
    _add_common(p)

    p = subs.add_parser("family", help="build a minimal witness family")
    p.add_argument("--c", type=_fraction_arg, required=True,
                   help="universal bound for the ambient 3-manifold (positive rational)")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--csv", metavar="PATH", help="write (i, multiplicity, rho) rows")
    p.add_argument("--plot", metavar="PATH", help="render the growth plot to an image file")
    _add_common(p)

    p = subs.add_parser("certify", help="pairwise non-concordance certificates")
    p.add_argument("--c", type=_fraction_arg, required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--multiplicities", metavar="M1,M2,...",
                   help="override the built multiplicities (negative controls)")
    _add_common(p)

    return parser


# ---------------------------------------------------------------------------
# subcommand implementations


def _theta_precision() -> float | None:
    return signature.env_theta_precision()


def _cmd_invariants(args):
    kd, digest = _load_knot(args.knot_file)
    V = family.seifert_matrix(kd)
    delta = seifert.alexander_poly(V)
    results = {
        "name": kd.name,
        "genus": V.genus,
        "alexander": delta.to_json(),
        "alexander_str": str(delta),
        "arf": seifert.arf(V),
        "ordinary_signature": seifert.ordinary_signature(V),
    }
    return results, 0, digest


def _cmd_signature(args):
    kd, digest = _load_knot(args.knot_file)
    V = family.seifert_matrix(kd)
    fn = signature.signature_function(V, gap_tol=args.tolerance,
                                      theta_precision=_theta_precision())
    rho = fn.integral()
    results = {
        "name": kd.name,
        "signature_function": fn.to_json(),
        "rho": rho.to_json(),
    }
    if args.csv:
        results["csv"] = str(plots.write_signature_csv(fn, args.csv, args.samples))
    if args.plot:
        results["plot"] = str(plots.write_signature_plot(fn, args.plot, title=kd.name))
    return results, 0, digest


def _cmd_covers(args):
    name, delta, digest = _load_delta_input(args.input_file)
    reports = covers.prime_power_cover_scan(delta, args.max_n)
    classification = covers.classify(delta)
    results = {
        "name": name,
        "alexander": delta.to_json(),
        "max_n": args.max_n,
        "reports": [r.to_json() for r in reports],
        "classification": classification.to_json(),
    }
    return results, 0, digest


def _cmd_livingston(args):
    name, delta, digest = _load_delta_input(args.input_file)
    fac = laurent.strip_cyclotomic_factors(delta)
    results = {
        "name": name,
        "alexander": delta.to_json(),
        "factorization": fac.to_json(),
        "classification": covers.classify(delta).to_json(),
    }
    return results, 0, digest


def _build_family(args) -> family.WitnessFamily:
    if getattr(args, "multiplicities", None):
        ms = [int(x) for x in args.multiplicities.split(",")]
        if len(ms) != args.count:
            raise ValueError(
                f"--multiplicities lists {len(ms)} values but --count is {args.count}"
            )
        return family.WitnessFamily.from_multiplicities(args.c, args.genus, ms)
    return family.build_witness_family(args.c, args.genus, args.count)


def _cmd_family(args):
    fam = family.build_witness_family(args.c, args.genus, args.count)
    digest = _params_digest(command="family", c=fam.c, genus=fam.genus, count=fam.size)
    results = {"family": fam.to_json()}
    if args.csv:
        results["csv"] = str(plots.write_family_csv(fam, args.csv))
    if args.plot:
        results["plot"] = str(plots.write_family_plot(fam, args.plot))
    return results, 0, digest


def _cmd_certify(args):
    fam = _build_family(args)
    digest = _params_digest(command="certify", c=fam.c, genus=fam.genus,
                            count=fam.size, multiplicities=fam.multiplicities)
    certificates = family.nonconcordance_report(fam)
    all_valid = all(cert.valid for cert in certificates)
    results = {
        "family": fam.to_json(),
        "certificates": [cert.to_json() for cert in certificates],
        "all_valid": all_valid,
    }
    return results, 0 if all_valid else 1, digest


_COMMANDS = {
    "invariants": _cmd_invariants,
    "signature": _cmd_signature,
    "covers": _cmd_covers,
    "livingston": _cmd_livingston,
    "family": _cmd_family,
    "certify": _cmd_certify,
}


# ---------------------------------------------------------------------------
# report emission


def _make_report(argv, args, results) -> dict:
    tolerances = {"eigenvalue_gap": getattr(args, "tolerance", signature.DEFAULT_GAP_TOL)}
    precision = _theta_precision()
    tolerances["theta_precision"] = (
        precision if precision is not None else signature.DEFAULT_THETA_PRECISION
    )
    report = {
        "tool": "concordance",
        "version": __version__,
        "command": list(argv),
        "input_digest": results.pop("_digest"),
        "tolerances": tolerances,
        "results": results,
    }
    if not args.no_timestamp:
        report["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return report


def _human_lines(command: str, report: dict) -> list[str]:
    r = report["results"]
    lines = [f"concordance {report['version']} :: {command}"]
    if command == "invariants":
        lines += [
            f"knot: {r['name']} (genus {r['genus']})",
            f"alexander polynomial: {r['alexander_str']}",
            f"arf invariant: {r['arf']}",
            f"ordinary signature: {r['ordinary_signature']}",
        ]
    elif command == "signature":
        fn = r["signature_function"]
        lines.append(f"knot: {r['name']}")
        if fn["jumps"]:
            for jump, before, after in zip(fn["jumps"], fn["values"], fn["values"][1:]):
                if jump["exact"]:
                    where = jump["lo"]
                else:
                    mid = (Fraction(jump["lo"]) + Fraction(jump["hi"])) / 2
                    where = f"~{float(mid):.9f}"
                lines.append(f"jump at theta = {where}: {before} -> {after}")
        else:
            lines.append("no jumps; signature is 0 on the whole circle")
        rho = r["rho"]
        err = Fraction(rho["error_bound"])
        err_text = "exact" if err == 0 else f"error bound {float(err):.2e}"
        value = Fraction(rho["value"])
        value_text = str(value) if err == 0 else f"{float(value):.9f} ({value})"
        lines.append(f"rho integral: {value_text} [{err_text}]")
        for key in ("csv", "plot"):
            if key in r:
                lines.append(f"{key} written to {r[key]}")
    elif command == "covers":
        lines.append(f"knot: {r['name']}, prime powers up to {r['max_n']}")
        for rep in r["reports"]:
            tag = "homology sphere" if rep["is_homology_sphere"] else (
                "infinite H1" if rep["order"] == 0 else f"|H1| = {rep['order']}")
            lines.append(f"n = {rep['n']:>2}: {tag}")
        lines += _classification_lines(r["classification"])
    elif command == "livingston":
        lines.append(f"knot: {r['name']}")
        fac = r["factorization"]
        part = ", ".join(f"phi_{n}^{m}" for n, m in fac["cyclotomic_part"]) or "none"
        lines.append(f"cyclotomic factors: {part}")
        rem = LaurentPoly.from_json(fac["remainder"])
        lines.append(f"non-cyclotomic remainder: {rem}")
        lines += _classification_lines(r["classification"])
    elif command == "family":
        fam = r["family"]
        lines.append(f"c = {fam['c']}, genus {fam['genus']}, {len(fam['multiplicities'])} members")
        for i, (m, rho) in enumerate(zip(fam["multiplicities"], fam["rho_values"]), start=1):
            lines.append(f"J_{i}: {m} left trefoils, rho = {rho}")
        for key in ("csv", "plot"):
            if key in r:
                lines.append(f"{key} written to {r[key]}")
    elif command == "certify":
        fam = r["family"]
        lines.append(f"c = {fam['c']}, genus {fam['genus']}, members {fam['multiplicities']}")
        for cert in r["certificates"]:
            i, j = cert["pair"]
            verdict = "valid" if cert["valid"] else "INVALID"
            lines.append(
                f"pair ({i}, {j}): {verdict}, {cert['pattern_count']} patterns, "
                f"worst |value| = {cert['worst_margin']}"
            )
        lines.append("all certificates valid" if r["all_valid"]
                     else "certificate check FAILED")
    return lines


def _classification_lines(cls: dict) -> list[str]:
    lines = [
        f"all prime power covers trivial: {cls['all_prime_power_covers_trivial']}",
        f"all finite covers trivial: {cls['all_finite_covers_trivial']}",
        f"Casson-Gordon applicable: {cls['cg_applicable']}",
    ]
    if cls["offending_factor"] is not None:
        lines.append(f"offending factor: {cls['offending_factor']}")
    return lines


def run(argv=None) -> tuple[int, dict | None]:
    """Parse arguments, execute the subcommand, and emit the report.

    Returns the exit code and the report object (None on input errors).
    """
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), None
    try:
        results, code, digest = _COMMANDS[args.command](args)
    except (ValueError, ArithmeticError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None
    results["_digest"] = digest
    report = _make_report(argv, args, results)
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print("\n".join(_human_lines(args.command, report)))
    return code, report


def main(argv=None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
