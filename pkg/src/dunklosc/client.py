"""Synchronous client for the computation service.

Without a base URL the client talks to the application in process through
the ASGI test transport, so the command line works with no server running
and no network; with one it speaks plain HTTP to a remote instance.
Either way the payloads and responses are identical, and since JSON float
serialization is shortest-roundtrip on both sides, table values survive
the hop bit for bit.
"""

from __future__ import annotations

import warnings

import httpx

from .errors import ConsistencyError, DomainError
from .tables import SeriesTable


def _test_client_class():
    # installed starlette deprecates its httpx-backed test client in favor
    # of a package that is not published; the client works, silence the noise
    with warnings.catch_warnings():
        warnings.filterwarnings(
            "ignore", message="Using `httpx` with `starlette.testclient`.*"
        )
        from fastapi.testclient import TestClient
    return TestClient


class ServiceClient:
    def __init__(self, base_url: str = None):
        if base_url is None:
            from .service.app import app

            self._client = _test_client_class()(app)
        else:
            self._client = httpx.Client(base_url=base_url, timeout=600.0)

    def close(self) -> None:
        self._client.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()

    def _post(self, path: str, payload: dict) -> dict:
        try:
            resp = self._client.post(path, json=payload)
        except httpx.TransportError as exc:
            raise OSError(f"cannot reach service at {path}: {exc}") from exc
        if resp.status_code == 400:
            raise DomainError(resp.json()["detail"])
        if resp.status_code == 409:
            raise ConsistencyError(resp.json()["detail"])
        if resp.status_code == 422:
            issues = resp.json().get("detail", [])
            what = "; ".join(
                "%s: %s" % (".".join(str(p) for p in issue.get("loc", [])), issue.get("msg", ""))
                for issue in issues
            )
            raise DomainError(f"invalid request: {what or resp.text}")
        if resp.status_code != 200:
            raise RuntimeError(f"service returned {resp.status_code}: {resp.text}")
        return resp.json()

    def health(self) -> dict:
        try:
            resp = self._client.get("/health")
        except httpx.TransportError as exc:
            raise OSError(f"cannot reach service: {exc}") from exc
        if resp.status_code != 200:
            raise RuntimeError(f"service returned {resp.status_code}: {resp.text}")
        return resp.json()

    def table(self, endpoint: str, payload: dict) -> SeriesTable:
        body = self._post(endpoint, payload)
        return SeriesTable(body["columns"], body["rows"])

    def verify(self, fast: bool = False) -> dict:
        return self._post("/verify", {"fast": fast})
