"""JSON-over-HTTP planning service.

Endpoints:
    GET  /health        -> {"status": "ok"}
    GET  /environments  -> {"environments": [names]}
    GET  /robots        -> {"robots": [names]}
    POST /plan          -> plan response (see formats.result_to_dict)

Requests are validated against the documented schema (schemas/ in the repo);
malformed requests get a 400 with the failing field, planner faults a 500.
Each request plans on its own isolated engine instance, so concurrent
requests are safe.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import fixtures
from .engine import plan
from .formats import FormatError, parse_request, result_to_dict


def handle_plan_request(data: dict) -> dict:
    req = parse_request(data)
    result = plan(
        req["env"],
        req["robot"],
        req["alpha"],
        req["beta"],
        req["eps"],
        strategy=req["strategy"],
        seed=req["seed"],
        collect_leaves=req["include_boxes"],
    )
    return result_to_dict(result, box_cap=req["box_cap"])


class _Handler(BaseHTTPRequestHandler):
    server_version = "polyplan"

    def _send(self, code: int, payload: dict):
        body = json.dumps(payload).encode()
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def do_OPTIONS(self):  # CORS preflight for the workbench
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_GET(self):
        if self.path == "/health":
            self._send(200, {"status": "ok"})
        elif self.path == "/environments":
            self._send(200, {"environments": sorted(fixtures.ENVIRONMENTS)})
        elif self.path == "/robots":
            self._send(200, {"robots": sorted(fixtures.ROBOTS)})
        else:
            self._send(404, {"error": f"unknown endpoint {self.path}"})

    def do_POST(self):
        if self.path != "/plan":
            self._send(404, {"error": f"unknown endpoint {self.path}"})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            raw = self.rfile.read(length)
            data = json.loads(raw.decode() or "{}")
        except (ValueError, UnicodeDecodeError) as e:
            self._send(400, {"error": f"invalid JSON: {e}"})
            return
        try:
            payload = handle_plan_request(data)
        except FormatError as e:
            self._send(400, {"error": str(e)})
            return
        except Exception as e:  # planner fault
            self._send(500, {"error": f"planner error: {e}"})
            return
        self._send(200, payload)

    def log_message(self, fmt, *args):
        pass  # keep stdout clean; the CLI prints the bound address


class PlannerServer:
    """Thin wrapper so tests can run the service on an ephemeral port."""

    def __init__(self, port: int = 0, host: str = "127.0.0.1"):
        self.httpd = ThreadingHTTPServer((host, port), _Handler)
        self.port = self.httpd.server_address[1]
        self._thread: threading.Thread | None = None

    def start_background(self):
        self._thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self):
        self.httpd.shutdown()
        self.httpd.server_close()

    def serve_forever(self):
        self.httpd.serve_forever()


def serve(port: int, host: str = "127.0.0.1") -> None:
    server = PlannerServer(port=port, host=host)
    print(f"polyplan service listening on http://{host}:{server.port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.stop()
