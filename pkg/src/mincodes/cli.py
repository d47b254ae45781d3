"""``mincodes`` command line: every pipeline stage as a JSON-emitting subcommand.

Exit status is 0 on success, 2 for usage errors (bad or missing flags,
unreadable input files) and 1 for domain errors, which are printed as
``{"error": {"kind": ..., "detail": ...}}``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Any, Sequence

from .errors import MinCodeError
from .galois import FieldSpec, field_build, prime_power
from .lincode import LinearCode, condensed_code, cyclic_code, dual, shorten_steps, weight_distribution
from .minimality import certify, closed_form_predicate, is_minimal_code_exhaustive, weight_ratio_sufficient
from .sss import access_structure, access_structure_trace, deal, reconstruct

SUBCOMMANDS = (
    "field",
    "code-build",
    "code-weights",
    "code-shorten",
    "code-condense",
    "check-minimal",
    "access",
    "deal",
    "reconstruct",
)


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_field_args(p: argparse.ArgumentParser, with_n: bool = True) -> None:
    g = p.add_argument_group("field")
    g.add_argument("--q", type=int, help="subfield order q = p^s (alternative to --p/--s)")
    g.add_argument("--p", type=int, help="characteristic")
    g.add_argument("--s", type=int, help="degree of GF(q) over GF(p) (default 1)")
    g.add_argument("--m", type=int, help="degree of GF(q^m) over GF(q)")
    g.add_argument("--modulus", type=_int_list, help="little-endian coefficients of the degree s*m modulus")
    g.add_argument("--field-file", type=Path, help="field description JSON")
    if with_n:
        g.add_argument("--N", type=int, help="N dividing q^m - 1")
        g.add_argument("--code-file", type=Path, help="code JSON (as produced by code-build)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mincodes", description=__doc__.splitlines()[0])
    parser.add_argument("--request", type=Path, help="JSON request file: {subcommand, params, output_path, seed}")
    sub = parser.add_subparsers(dest="subcommand", metavar="subcommand")
    sub.required = True

    def add(name: str, help_text: str, with_n: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        _add_field_args(sp, with_n)
        sp.add_argument("--output", "--output-path", dest="output", type=Path, help="write JSON here instead of stdout")
        return sp

    add("field", "describe GF(q^m) and its default modulus", with_n=False)
    add("code-build", "generator of the irreducible cyclic code C(q, m, N)")
    add("code-weights", "weight distribution of a code")
    sp = add("code-shorten", "shorten a code i+1 times")
    sp.add_argument("--steps", type=int, default=0, help="shortening index i (default 0: one shortening)")
    add("code-condense", "the condensed section of C(q, m, N)")
    sp = add("check-minimal", "certify minimality")
    sp.add_argument(
        "--method",
        choices=("auto", "exhaustive", "weight-ratio", "closed-form", "all"),
        default="auto",
        help="auto tries closed form, weight ratio, then exhaustive",
    )
    sp = add("access", "minimal access structure of the scheme on the dual code")
    sp.add_argument("--algorithm", choices=("codewords", "trace"), default="codewords")
    sp = add("deal", "deal a secret with the scheme on the dual code")
    sp.add_argument("--secret", type=int, required=True)
    sp.add_argument("--seed", type=int, help="seed for a reproducible deal")
    sp = add("reconstruct", "recover the secret from a coalition's shares")
    sp.add_argument("--coalition", type=_int_list, required=True, help="1-based participants, e.g. 1,3,6")
    sp.add_argument("--shares-file", type=Path, required=True, help="deal JSON or {participant: share}")
    return parser


# -- request files ----------------------------------------------------------------


def _request_argv(path: Path) -> list[str]:
    try:
        req = json.loads(path.read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read request {path}: {exc}") from None
    if not isinstance(req, dict) or req.get("subcommand") not in SUBCOMMANDS:
        raise UsageError(f"request must name a subcommand from {', '.join(SUBCOMMANDS)}")
    params = dict(req.get("params") or {})
    if req.get("seed") is not None:
        params["seed"] = req["seed"]
    if req.get("output_path") is not None:
        params["output"] = req["output_path"]
    argv = [req["subcommand"]]
    for key, value in params.items():
        if value is None:
            continue
        argv.append("--" + str(key).replace("_", "-"))
        argv.append(",".join(str(v) for v in value) if isinstance(value, (list, tuple)) else str(value))
    return argv


def _expand_request(argv: list[str]) -> list[str]:
    if "--request" not in argv:
        return argv
    i = argv.index("--request")
    if i + 1 >= len(argv):
        raise UsageError("--request needs a file")
    rest = argv[:i] + argv[i + 2 :]
    return _request_argv(Path(argv[i + 1])) + rest


# -- parameter records -------------------------------------------------------------


def _load_json(path: Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _field_params(args) -> tuple[int, int, int | None]:
    """(p, s, m) from --q or --p/--s; validated before any computation."""
    if args.field_file is not None:
        obj = _load_json(args.field_file)
        return int(obj["p"]), int(obj.get("s", 1)), int(obj.get("m", 1))
    if args.q is not None:
        if args.p is not None and args.p ** (args.s or 1) != args.q:
            raise UsageError(f"--q {args.q} disagrees with --p {args.p} --s {args.s or 1}")
        if args.q < 2:
            raise UsageError("--q must be a prime power >= 2")
        p, s = prime_power(args.q)
        return p, s, args.m
    if args.p is None:
        raise UsageError("give --q or --p")
    return args.p, args.s or 1, args.m


def _field(args) -> FieldSpec:
    if args.field_file is not None:
        return FieldSpec.from_json(_load_json(args.field_file))
    p, s, m = _field_params(args)
    if m is None or m < 1:
        raise UsageError("--m must be a positive integer")
    if s < 1:
        raise UsageError("--s must be a positive integer")
    return field_build(p, s, m, args.modulus)


def _cyclic_params(args) -> tuple[int, int, int, FieldSpec]:
    if args.N is None:
        raise UsageError("--N is required")
    f = _field(args)
    return f.q, f.m, args.N, f


def _source_code(args) -> LinearCode:
    if getattr(args, "code_file", None) is not None:
        obj = _load_json(args.code_file)
        try:
            return LinearCode.from_json(obj)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed code file {args.code_file}: {exc}") from None
    q, m, N, f = _cyclic_params(args)
    return cyclic_code(q, m, N, f)


def _validate(args) -> None:
    """Flag-level checks that must pass before any field or code is built."""
    if getattr(args, "code_file", None) is None:
        if args.field_file is None:
            _, s, m = _field_params(args)
            if m is None or m < 1 or s < 1:
                raise UsageError("--m and --s must be positive integers")
        if args.subcommand != "field" and args.N is None:
            raise UsageError("--N is required")
    if args.subcommand == "code-shorten" and args.steps < 0:
        raise UsageError("--steps must be non-negative")
    if args.subcommand == "check-minimal" and args.method == "closed-form" and getattr(args, "code_file", None):
        obj = _load_json(args.code_file)
        if (obj.get("provenance") or {}).get("type") != "cyclic":
            raise UsageError("--method closed-form needs a cyclic code (give --q --m --N)")


# -- subcommands -------------------------------------------------------------------


def _cmd_field(args) -> dict:
    f = _field(args)
    out = f.to_json()
    out.update({"q": f.q, "r": f.r, "alpha": list(f.alpha.rep)})
    return out


def _cmd_check_minimal(args) -> dict:
    code = _source_code(args)
    prov = code.provenance
    method = args.method

    def closed_form() -> dict:
        if prov.get("type") != "cyclic":
            raise UsageError("closed-form checks need a cyclic code")
        return closed_form_predicate(prov["q"], prov["m"], prov["N"]).to_json()

    if method == "exhaustive":
        return is_minimal_code_exhaustive(code).to_json()
    if method == "weight-ratio":
        return weight_ratio_sufficient(code).to_json()
    if method == "closed-form":
        return closed_form()
    if method == "all":
        out = {
            "exhaustive": is_minimal_code_exhaustive(code).to_json(),
            "weight_ratio": weight_ratio_sufficient(code).to_json(),
        }
        if prov.get("type") == "cyclic" and prov.get("N") in (2, 3, 4):
            out["closed_form"] = closed_form()
        else:
            out["closed_form"] = None
        return out
    return certify(code).to_json()


def _cmd_access(args) -> dict:
    if args.algorithm == "trace":
        if args.code_file is not None:
            raise UsageError("--algorithm trace builds the code itself; drop --code-file")
        q, m, N, f = _cyclic_params(args)
        return access_structure_trace(q, m, N, f).to_json()
    return access_structure(_source_code(args)).to_json()


def _cmd_deal(args) -> dict:
    scheme = dual(_source_code(args))
    rng = random.Random(args.seed) if args.seed is not None else None
    return deal(scheme, args.secret, rng).to_json()


def _shares_from(obj: Any) -> dict[int, int]:
    if isinstance(obj, dict) and isinstance(obj.get("shares"), dict):
        obj = obj["shares"]
    if isinstance(obj, list):
        return {i: int(t) for i, t in enumerate(obj, 1)}
    if not isinstance(obj, dict):
        raise UsageError("shares file must map participants to shares")
    try:
        return {int(k): int(v) for k, v in obj.items()}
    except (TypeError, ValueError):
        raise UsageError("shares file must map integer participants to integer shares") from None


def _cmd_reconstruct(args) -> dict:
    shares = _shares_from(_load_json(args.shares_file))
    scheme = dual(_source_code(args))
    secret = reconstruct(shares, args.coalition, scheme)
    return {"secret": secret, "coalition": sorted(set(args.coalition))}


def _dispatch(args) -> Any:
    cmd = args.subcommand
    if cmd == "field":
        return _cmd_field(args)
    if cmd == "code-build":
        q, m, N, f = _cyclic_params(args)
        return cyclic_code(q, m, N, f).to_json()
    if cmd == "code-condense":
        q, m, N, f = _cyclic_params(args)
        return condensed_code(q, m, N, f).to_json()
    if cmd == "code-weights":
        return weight_distribution(_source_code(args)).to_json()
    if cmd == "code-shorten":
        return shorten_steps(_source_code(args), args.steps).to_json()
    if cmd == "check-minimal":
        return _cmd_check_minimal(args)
    if cmd == "access":
        return _cmd_access(args)
    if cmd == "deal":
        return _cmd_deal(args)
    if cmd == "reconstruct":
        return _cmd_reconstruct(args)
    raise UsageError(f"unknown subcommand {cmd}")  # pragma: no cover - argparse restricts choices


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _expand_request(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"mincodes: error: {exc}", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    output = getattr(args, "output", None)
    try:
        _validate(args)
        result = _dispatch(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"mincodes: error: {exc}", file=sys.stderr)
        return 2
    except MinCodeError as exc:
        _emit(dumps({"error": {"kind": exc.kind, "detail": exc.detail}}), output)
        return 1
    except Exception as exc:  # no tracebacks reach the user
        _emit(dumps({"error": {"kind": "internal_error", "detail": f"{type(exc).__name__}: {exc}"}}), output)
        return 1
    _emit(dumps(result), output)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
