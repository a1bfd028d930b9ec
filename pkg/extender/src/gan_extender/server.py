"""HTTP endpoint variant: one loaded model serving many batch requests."""

from __future__ import annotations

import json
from http.server import BaseHTTPRequestHandler, HTTPServer

from .model import ExtenderConfig, ExtensionModel
from .protocol import handle_request


def make_server(config: ExtenderConfig, host: str = "127.0.0.1", port: int = 8765) -> HTTPServer:
    """Build (and eagerly load the model for) a serving HTTPServer."""
    model = ExtensionModel(config)

    class Handler(BaseHTTPRequestHandler):
        def do_POST(self):
            try:
                length = int(self.headers.get("Content-Length", "0"))
                body = json.loads(self.rfile.read(length))
                ok = handle_request(
                    body["request_dir"], body["response_dir"], config, model=model
                )
            except Exception as exc:
                self.send_response(500)
                self.end_headers()
                self.wfile.write(str(exc).encode())
                return
            self.send_response(200 if ok else 500)
            self.end_headers()
            self.wfile.write(b"ok" if ok else b"batch had failing tiles")

        def log_message(self, *args):
            pass

    return HTTPServer((host, port), Handler)


def serve(config: ExtenderConfig, host: str = "127.0.0.1", port: int = 8765) -> None:
    server = make_server(config, host, port)
    print(f"serving repair protocol on http://{host}:{server.server_port}/extend")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
