"""Command line front end: extend / serve / build-fallback."""

from __future__ import annotations

import argparse
import sys

from .errors import ModelError, ProtocolError
from .model import ExtenderConfig, resolve_model_source


def _config(args) -> ExtenderConfig:
    return ExtenderConfig(
        model_source=resolve_model_source(args.model),
        device=args.device,
        extension_fraction=args.fraction,
    )


def cmd_extend(args) -> int:
    from .protocol import handle_request

    ok = handle_request(args.request, args.response, _config(args))
    return 0 if ok else 1


def cmd_serve(args) -> int:
    from .server import serve

    serve(_config(args), host=args.host, port=args.port)
    return 0


def cmd_build_fallback(args) -> int:
    from .fallback import build_fallback_model

    path = build_fallback_model(args.out, resolution=args.resolution, fraction=args.fraction)
    print(f"wrote fallback SavedModel to {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gan-extender", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def model_flags(p):
        p.add_argument("--model", help="SavedModel directory (or set GAN_EXTENDER_MODEL)")
        p.add_argument("--device", choices=["cpu", "gpu"], default="cpu")
        p.add_argument("--fraction", type=float, default=0.25,
                       help="fraction of the model canvas that is synthesized")

    extend = sub.add_parser("extend", help="answer one repair-protocol request directory")
    extend.add_argument("--request", required=True)
    extend.add_argument("--response", required=True)
    model_flags(extend)
    extend.set_defaults(func=cmd_extend)

    serve_p = sub.add_parser("serve", help="HTTP endpoint; loads the model once")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8765)
    model_flags(serve_p)
    serve_p.set_defaults(func=cmd_serve)

    fallback = sub.add_parser(
        "build-fallback", help="write the deterministic offline stand-in model"
    )
    fallback.add_argument("--out", required=True)
    fallback.add_argument("--resolution", type=int, default=257)
    fallback.add_argument("--fraction", type=float, default=0.25)
    fallback.set_defaults(func=cmd_build_fallback)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ModelError, ProtocolError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
