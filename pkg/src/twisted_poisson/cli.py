"""Command-line client.

    twisted-poisson verify --config cfg.json [--suite NAME]... [--out report.json] [--url URL]
    twisted-poisson export --config cfg.json --what structure [--out file.json] [--url URL]
    twisted-poisson serve [--host H] [--port P]

Without ``--url`` the service core runs in-process.  Exit codes: 0 all checks
pass, 1 some check failed, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .config import ConfigError, RunConfig, load_config
from .suites import REGISTRY

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _dump(document: Any, out: str | None) -> None:
    text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _remote(url: str, path: str, config: RunConfig) -> dict[str, Any]:
    import httpx

    response = httpx.post(url.rstrip("/") + path, json=config.model_dump(mode="json", exclude={"output"}),
                          timeout=None)
    if response.status_code == 422:
        raise ConfigError(json.dumps(response.json().get("detail")))
    response.raise_for_status()
    return response.json()


def _summary_line(report: dict[str, Any]) -> str:
    parts = [f"{s['suite']}={s['status']}" for s in report["suites"]]
    return f"{report['status'].upper()}: " + " ".join(parts)


def cmd_verify(args: argparse.Namespace) -> int:
    config = load_config(args.config, suites=args.suite, output=args.out)
    if args.url:
        report = _remote(args.url, "/verify", config)
    else:
        from .service import run

        report = run(config).model_dump(mode="json")
    _dump(report, config.output)
    print(_summary_line(report), file=sys.stderr)
    return EXIT_PASS if report["status"] == "pass" else EXIT_FAIL


def cmd_export(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.url:
        document = _remote(args.url, f"/export/{args.what}", config)
    else:
        from .service import export

        document = export(config, args.what)
    _dump(document, args.out)
    return EXIT_PASS


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("twisted_poisson.service:app", host=args.host, port=args.port)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twisted-poisson", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("--config", required=True)
    verify.add_argument("--suite", action="append", choices=list(REGISTRY),
                        help="suite to run (repeatable); overrides the config list")
    verify.add_argument("--out", help="write the JSON report here instead of stdout")
    verify.add_argument("--url", help="base URL of a running service")
    verify.set_defaults(func=cmd_verify)

    export = sub.add_parser("export", help="serialize tables")
    export.add_argument("--config", required=True)
    export.add_argument("--what", required=True, choices=["roots", "structure", "modules", "brackets", "ideals"])
    export.add_argument("--out")
    export.add_argument("--url")
    export.set_defaults(func=cmd_export)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors are configuration errors
        return EXIT_CONFIG if exc.code else EXIT_PASS
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
