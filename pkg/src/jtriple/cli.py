"""Thin command-line client for the HTTP service.

Every subcommand maps onto one service route.  By default the requests
run against an in-process instance of the app (no server required);
``--url`` targets a running server instead, and ``serve`` starts one.

Exit codes: 0 success / all checks passed, 1 some check or battery
failed, 2 bad input (malformed JSON, dimension mismatch, unknown flags).
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys

import httpx

from .jsonio import canonical_json


def _default_tol() -> float:
    return float(os.environ.get("JTRIPLE_TOL", "1e-9"))

CHECK_FLAGS = [
    ("derivation", "Leibniz rule over all basis triples"),
    ("h1", "orthogonal annihilation {a,T(b),c} = 0 for a,c orthogonal to b"),
    ("h2", "Peirce-2/Q compatibility below the support tripotent"),
    ("local", "pointwise membership in the derivation space"),
    ("weak-local", "functional-wise membership in the derivation space"),
    ("dissipative", "Re phi(T(a)) <= 0 on norming pairs"),
    ("tripotent-identities", "the three identities at random tripotents"),
]


def call_service(path: str, payload: dict, url: str | None) -> tuple[int, dict]:
    """POST ``payload`` to ``path``, in-process unless ``url`` is given."""

    async def go():
        if url is None:
            from .service import create_app

            transport = httpx.ASGITransport(app=create_app())
            async with httpx.AsyncClient(
                transport=transport, base_url="http://jtriple.internal", timeout=600.0
            ) as client:
                response = await client.post(path, json=payload)
                return response.status_code, response.json()
        async with httpx.AsyncClient(base_url=url, timeout=600.0) as client:
            response = await client.post(path, json=payload)
            return response.status_code, response.json()

    return asyncio.run(go())


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise SystemExit(_fail(f"no such file: {path}"))
    except json.JSONDecodeError as exc:
        raise SystemExit(_fail(f"malformed JSON in {path}: {exc}"))


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
            if not text.endswith("\n"):
                handle.write("\n")
    else:
        print(text)


def _report_lines(report: dict) -> str:
    verdict = "PASS" if report.get("pass") else "FAIL"
    return (
        f"{report.get('name')}: {verdict} "
        f"(max_residual={report.get('max_residual'):.3e}, "
        f"trials={report.get('trials')}, seed={report.get('seed')})"
    )


def _render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return canonical_json(payload)
    if "reports" in payload:
        return "\n".join(_report_lines(r) for r in payload["reports"])
    if "cases" in payload:
        lines = [
            f"{case['kind']}[{case['index']}]: "
            + ("agree" if case["agreement"] else "DISAGREE")
            + " "
            + ",".join(f"{k}={'P' if v else 'F'}" for k, v in case["verdicts"].items())
            for case in payload["cases"]
        ]
        lines.append("battery: " + ("PASS" if payload.get("pass") else "FAIL"))
        return "\n".join(lines)
    if "name" in payload and "max_residual" in payload:
        return _report_lines(payload)
    return canonical_json(payload)


def _handle_error(status: int, payload: dict) -> int:
    detail = payload.get("detail", payload)
    return _fail(f"service rejected the request ({status}): {detail}")


def cmd_gen(args) -> int:
    if args.system_kind == "matrix":
        body = {"rows": args.rows, "cols": args.cols}
    else:
        body = {"rows": 1, "cols": args.dim}
    status, payload = call_service("/systems/matrix", body, args.url)
    if status != 200:
        return _handle_error(status, payload)
    _emit(canonical_json(payload), args.output)
    return 0


def cmd_der_basis(args) -> int:
    system = _read_json(args.system)
    status, payload = call_service("/derivations/basis", {"system": system}, args.url)
    if status != 200:
        return _handle_error(status, payload)
    _emit(canonical_json(payload), args.output)
    return 0


def _sidecar_basis(args, system: dict) -> dict:
    sidecar = args.system + ".basis.json"
    if os.path.exists(sidecar):
        return _read_json(sidecar)
    status, payload = call_service("/derivations/basis", {"system": system}, args.url)
    if status != 200:
        raise SystemExit(_handle_error(status, payload))
    with open(sidecar, "w", encoding="utf-8") as handle:
        handle.write(canonical_json(payload) + "\n")
    return payload


def cmd_check(args) -> int:
    selected = [name for name, _ in CHECK_FLAGS if getattr(args, name.replace("-", "_"))]
    if not selected:
        return _fail("select at least one check flag (e.g. --derivation --h1)")
    system = _read_json(args.system)
    candidate = _read_json(args.map)
    body = {
        "system": system,
        "map": candidate,
        "checks": selected,
        "trials": args.trials,
        "seed": args.seed,
        "tol": args.tol,
    }
    if any(name in selected for name in ("local", "weak-local")):
        body["basis"] = _sidecar_basis(args, system)
    status, payload = call_service("/checks/run", body, args.url)
    if status != 200:
        return _handle_error(status, payload)
    _emit(_render(payload, args.format), args.output)
    return 0 if payload.get("pass") else 1


def cmd_battery(args) -> int:
    system = _read_json(args.system)
    body = {
        "system": system,
        "trials": args.trials,
        "seed": args.seed,
        "tol": args.tol,
        "counts": {
            "span": args.n_span,
            "generic": args.n_generic,
            "perturbed": args.n_perturbed,
            "commutator": args.n_commutator,
        },
    }
    status, payload = call_service("/battery/run", body, args.url)
    if status != 200:
        return _handle_error(status, payload)
    _emit(_render(payload, args.format), args.output)
    return 0 if payload.get("pass") else 1


def cmd_gallery(args) -> int:
    body: dict = {"n": args.n}
    if args.x0:
        body["x0"] = _read_json(args.x0)
    status, payload = call_service("/gallery/commutator", body, args.url)
    if status != 200:
        return _handle_error(status, payload)
    if payload.get("warning"):
        print(f"warning: {payload['warning']}", file=sys.stderr)
    _emit(canonical_json(payload["map"]), args.output)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("jtriple.service.app:app", host=args.host, port=args.port)
    return 0


def _add_common(parser: argparse.ArgumentParser, randomized: bool = False) -> None:
    parser.add_argument("--url", default=None, help="target a running service instead of in-process")
    parser.add_argument("-o", "--output", default=None, help="write the result to this file")
    if randomized:
        parser.add_argument("--trials", type=int, default=200)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--tol", type=float, default=None,
                            help="tolerance (default: JTRIPLE_TOL env var or 1e-9)")
        parser.add_argument("--format", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jtriple",
        description="Triple systems, derivation spaces, and locality check batteries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="construct a triple system")
    gen_sub = gen.add_subparsers(dest="system_kind", required=True)
    gen_matrix = gen_sub.add_parser("matrix", help="the matrix triple M(rows, cols)")
    gen_matrix.add_argument("--rows", type=int, required=True)
    gen_matrix.add_argument("--cols", type=int, required=True)
    _add_common(gen_matrix)
    gen_matrix.set_defaults(func=cmd_gen)
    gen_hilbert = gen_sub.add_parser("hilbert", help="the Hilbert-space triple (alias M(1, dim))")
    gen_hilbert.add_argument("--dim", type=int, required=True)
    _add_common(gen_hilbert)
    gen_hilbert.set_defaults(func=cmd_gen)

    basis = sub.add_parser("der-basis", help="compute the derivation-space basis")
    basis.add_argument("system", help="system JSON file")
    _add_common(basis)
    basis.set_defaults(func=cmd_der_basis)

    check = sub.add_parser("check", help="run selected checks on a candidate map")
    check.add_argument("system", help="system JSON file")
    check.add_argument("map", help="map JSON file")
    for name, help_text in CHECK_FLAGS:
        check.add_argument(f"--{name}", action="store_true", help=help_text)
    _add_common(check, randomized=True)
    check.set_defaults(func=cmd_check)

    battery = sub.add_parser("battery", help="classify a mixed population of maps")
    battery.add_argument("system", help="system JSON file")
    battery.add_argument("--n-span", type=int, default=30)
    battery.add_argument("--n-generic", type=int, default=30)
    battery.add_argument("--n-perturbed", type=int, default=30)
    battery.add_argument("--n-commutator", type=int, default=10)
    _add_common(battery, randomized=True)
    battery.set_defaults(func=cmd_battery)

    gallery = sub.add_parser("gallery", help="construct example maps")
    gallery_sub = gallery.add_subparsers(dest="gallery_kind", required=True)
    commutator = gallery_sub.add_parser("commutator", help="a -> x0 a - a x0 on M(n, n)")
    commutator.add_argument("--n", type=int, required=True)
    commutator.add_argument("--x0", default=None, help="element JSON file for the seed")
    _add_common(commutator)
    commutator.set_defaults(func=cmd_gallery)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, 0 on --help
        return int(exc.code or 0)
    if hasattr(args, "tol") and args.tol is None:
        args.tol = _default_tol()
    if getattr(args, "tol", 1.0) <= 0:
        return _fail("tol must be positive")
    if getattr(args, "trials", 1) < 1:
        return _fail("trials must be at least 1")
    if getattr(args, "seed", 0) < 0:
        return _fail("seed must be nonnegative")
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except httpx.HTTPError as exc:
        return _fail(f"could not reach the service: {exc}")


def entrypoint() -> None:
    sys.exit(main())
