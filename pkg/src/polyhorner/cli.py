"""Command-line client for the polynomial service.

Every subcommand is a thin wrapper over one service endpoint.  By default
requests run against an in-process instance of the application (no server
needed); pass ``--server http://host:port`` to talk to a running one, or
start one with ``polyhorner serve``.

Exit codes: 0 on success, 1 on usage errors, 2 on data/validation errors.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

DEFAULT_BUDGET = 1_000_000


class _DataError(Exception):
    """Bad input data or a rejected request; exits with code 2."""


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1 (argparse defaults to 2, which is reserved
    # for data errors here)
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _request(server: str | None, method: str, path: str, **kwargs) -> dict:
    async def run() -> tuple[int, object]:
        if server:
            client = httpx.AsyncClient(base_url=server, timeout=None)
        else:
            from .service import create_app

            transport = httpx.ASGITransport(app=create_app())
            client = httpx.AsyncClient(transport=transport, base_url="http://polyhorner.internal", timeout=None)
        async with client:
            response = await client.request(method, path, **kwargs)
            return response.status_code, response.json()

    try:
        status, body = asyncio.run(run())
    except httpx.HTTPError as exc:
        raise _DataError(f"request failed: {exc}") from None
    if status == 200:
        return body
    raise _DataError(_format_detail(body))


def _format_detail(body: object) -> str:
    if isinstance(body, dict):
        detail = body.get("detail", body)
        if isinstance(detail, str):
            return detail
        if isinstance(detail, list):  # pydantic validation report
            parts = []
            for item in detail:
                loc = ".".join(str(p) for p in item.get("loc", []) if p != "body")
                parts.append(f"{loc}: {item.get('msg', 'invalid')}" if loc else item.get("msg", "invalid"))
            return "; ".join(parts)
    return str(body)


def _load_polynomial_file(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _DataError(f"cannot read {path}: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _DataError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise _DataError(f"{path} must contain a JSON object")
    return obj


def _cmd_factorize(args: argparse.Namespace) -> int:
    payload = _load_polynomial_file(args.input)
    data = _request(
        args.server,
        "POST",
        "/factorize",
        json={
            "polynomial": payload,
            "optimal": args.optimal,
            "budget": args.budget,
            "dump_recipe": args.dump_recipe,
        },
    )
    if args.json:
        print(json.dumps(data, indent=2))
        return 0
    print(data["rendering"])
    print(f"ops_horner: {data['ops_horner']}")
    print(f"ops_canonical: {data['ops_canonical']}")
    if data.get("exhausted"):
        print("search budget exhausted: result is the best factorisation found")
    if data.get("recipe_dump"):
        print(data["recipe_dump"])
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    payload = _load_polynomial_file(args.input)
    try:
        point = [float(part) for part in args.point.split(",")]
    except ValueError:
        raise _DataError(f"--point must be a comma-separated list of numbers, got {args.point!r}")
    method = "canonical" if args.canonical else "horner"
    data = _request(
        args.server,
        "POST",
        "/evaluate",
        json={"polynomial": payload, "point": point, "method": method},
    )
    print(repr(float(data["value"])))
    return 0


def _cmd_diff(args: argparse.Namespace) -> int:
    payload = _load_polynomial_file(args.input)
    data = _request(args.server, "POST", "/differentiate", json={"polynomial": payload, "var": args.var})
    derivative = data["polynomial"]
    derivative.pop("name", None)
    text = json.dumps(derivative, indent=2) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise _DataError(f"cannot write {args.out}: {exc}") from None
    return 0


def _cmd_count(args: argparse.Namespace) -> int:
    data = _request(
        args.server,
        "GET",
        "/count",
        params={"dimension": args.dim, "degree": args.degree, "kind": args.kind},
    )
    print(data["count"])
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    data = _request(
        args.server,
        "POST",
        "/bench",
        json={
            "max_dimension": args.max_dim,
            "max_degree": args.max_degree,
            "polys_per_cell": args.polys_per_cell,
            "trials": args.trials,
            "seed": args.seed,
        },
    )
    try:
        Path(args.out).write_bytes(data["csv"].encode("utf-8"))
    except OSError as exc:
        raise _DataError(f"cannot write {args.out}: {exc}") from None
    print(data["summary"])
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="polyhorner", description=__doc__.split("\n\n")[0])
    parser.add_argument("--server", metavar="URL", default=None, help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("factorize", help="compute a Horner factorisation of a polynomial file")
    p.add_argument("input", help="polynomial JSON file")
    p.add_argument("--optimal", action="store_true", help="search for a minimal factorisation")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, metavar="B", help="search state budget (default: %(default)s)")
    p.add_argument("--dump-recipe", action="store_true", help="append the compiled instruction listing")
    p.add_argument("--json", action="store_true", help="emit a JSON object instead of text")
    p.set_defaults(func=_cmd_factorize)

    p = sub.add_parser("eval", help="evaluate a polynomial file at a point")
    p.add_argument("input", help="polynomial JSON file")
    p.add_argument("--point", required=True, metavar="V1,V2,...", help="evaluation point, comma-separated")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--canonical", action="store_true", help="evaluate the unfactorised form")
    mode.add_argument("--horner", action="store_true", help="evaluate via the factorised recipe (default)")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("diff", help="partial derivative of a polynomial file")
    p.add_argument("input", help="polynomial JSON file")
    p.add_argument("--var", type=int, required=True, metavar="I", help="variable index, 1-based")
    p.add_argument("--out", default="-", metavar="PATH", help="output file (default: stdout)")
    p.set_defaults(func=_cmd_diff)

    p = sub.add_parser("count", help="number of monomials of a fully occupied polynomial")
    p.add_argument("--dim", type=int, required=True, metavar="M", help="dimension")
    p.add_argument("--degree", type=int, required=True, metavar="N", help="degree")
    p.add_argument("--kind", choices=["total", "euclidean", "maximal"], required=True, help="degree kind")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("bench", help="run the benchmark sweep and write a CSV")
    p.add_argument("--max-dim", type=int, default=7, help="largest dimension (default: %(default)s)")
    p.add_argument("--max-degree", type=int, default=7, help="largest degree (default: %(default)s)")
    p.add_argument("--polys-per-cell", type=int, default=5, help="polynomials per (m, n) cell (default: %(default)s)")
    p.add_argument("--trials", type=int, default=100, help="coefficient trials per polynomial (default: %(default)s)")
    p.add_argument("--seed", type=int, default=1, help="master seed (default: %(default)s)")
    p.add_argument("--out", required=True, metavar="CSV", help="CSV output path")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def _glue_point_flag(argv: list[str]) -> list[str]:
    # "--point -2,3,1" would trip argparse's leading-dash option detection;
    # fold the value into "--point=-2,3,1" before parsing
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--point" and i + 1 < len(argv):
            out.append(f"--point={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_point_flag(argv if argv is not None else sys.argv[1:]))
    try:
        return args.func(args)
    except _DataError as exc:
        print(f"polyhorner: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
