"""HTTP layer: request validation, payload fidelity, and error mapping."""

import httpx
import pytest

import dunklosc
from dunklosc.client import ServiceClient, _test_client_class
from dunklosc.errors import ConsistencyError, ConvergenceError, DomainError
from dunklosc.params import EVEN, ODD, OscillatorParams
from dunklosc.service.app import app
from dunklosc.spectrum import density_table, spectrum_table
from dunklosc.thermo import tau_grid_linear, thermo_scan


@pytest.fixture(scope="module")
def raw():
    with _test_client_class()(app) as c:
        yield c


# registered once; exercises the 409 handler end to end
@app.post("/_test/convergence")
def _always_diverges():
    raise ConvergenceError("synthetic divergence", requested=1e-12, achieved=1.0)


class TestHealth:
    def test_ok(self, raw):
        resp = raw.get("/health")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok", "version": dunklosc.__version__}


class TestSpectrumEndpoint:
    def test_defaults_match_library(self, raw):
        resp = raw.post("/spectrum", json={})
        assert resp.status_code == 200
        body = resp.json()
        table = spectrum_table(10, OscillatorParams.from_r(1.0, 0.5))
        assert body["columns"] == list(table.columns)
        assert body["rows"] == [list(r) for r in table.rows]  # exact float fidelity

    def test_single_parity(self, raw):
        resp = raw.post("/spectrum", json={"n_max": 3, "parities": ["odd"], "r": 2.0})
        assert resp.status_code == 200
        assert resp.json()["columns"] == ["n", "E_odd_over_m"]
        assert len(resp.json()["rows"]) == 4

    @pytest.mark.parametrize("payload", [
        {"mu": -0.5},
        {"n_max": -1},
        {"parities": []},
        {"parities": ["sideways"]},
        {"r": 0.0},
    ])
    def test_schema_violations_are_422(self, raw, payload):
        assert raw.post("/spectrum", json=payload).status_code == 422

    def test_duplicate_parities_are_400(self, raw):
        resp = raw.post("/spectrum", json={"parities": ["even", "even"]})
        assert resp.status_code == 400
        assert "parities" in resp.json()["detail"]


class TestDensityEndpoint:
    def test_matches_library(self, raw):
        payload = {"n_list": [0, 2], "parity": "odd", "xi_steps": 11}
        resp = raw.post("/density", json=payload)
        assert resp.status_code == 200
        table = density_table([0, 2], OscillatorParams.from_r(1.0, 0.5), ODD, xi_steps=11)
        assert resp.json()["columns"] == list(table.columns)
        assert resp.json()["rows"] == [list(r) for r in table.rows]

    def test_bad_grid_is_400(self, raw):
        resp = raw.post("/density", json={"xi_min": 2.0, "xi_max": -2.0})
        assert resp.status_code == 400

    @pytest.mark.parametrize("payload", [
        {"xi_steps": 1},
        {"n_list": []},
        {"n_list": [0], "parity": "both"},
    ])
    def test_schema_violations_are_422(self, raw, payload):
        assert raw.post("/density", json=payload).status_code == 422

    def test_duplicate_n_is_400(self, raw):
        assert raw.post("/density", json={"n_list": [1, 1]}).status_code == 400


class TestThermoEndpoint:
    def test_matches_library(self, raw):
        payload = {
            "r_list": [1.0, 2.0],
            "parities": ["even"],
            "tau_min": 2.0,
            "tau_max": 4.0,
            "tau_steps": 3,
            "observables": ["Z", "U"],
        }
        resp = raw.post("/thermo", json=payload)
        assert resp.status_code == 200
        params = [OscillatorParams.from_r(r, 0.5) for r in (1.0, 2.0)]
        table = thermo_scan(params, (EVEN,), tau_grid_linear(2.0, 4.0, 3), ("Z", "U"))
        assert resp.json()["columns"] == list(table.columns)
        assert resp.json()["rows"] == [list(r) for r in table.rows]

    def test_single_point_grid(self, raw):
        resp = raw.post("/thermo", json={"tau_min": 5.0, "tau_steps": 1})
        assert resp.status_code == 200
        assert len(resp.json()["rows"]) == 1

    @pytest.mark.parametrize("payload", [
        {"tau_min": 0.0},
        {"tau_steps": 0},
        {"observables": ["Q"]},
        {"observables": []},
        {"r_list": []},
    ])
    def test_schema_violations_are_422(self, raw, payload):
        assert raw.post("/thermo", json=payload).status_code == 422

    @pytest.mark.parametrize("payload", [
        {"r_list": [1.0, 1.0]},
        {"tau_min": 5.0, "tau_max": 2.0, "tau_steps": 4},
        {"parities": ["odd", "odd"]},
    ])
    def test_domain_violations_are_400(self, raw, payload):
        assert raw.post("/thermo", json=payload).status_code == 400


class TestVerifyEndpoint:
    def test_fast_run_passes(self, raw):
        resp = raw.post("/verify", json={"fast": True})
        assert resp.status_code == 200
        body = resp.json()
        assert body["all_passed"] is True
        assert len(body["checks"]) >= 10
        assert all(c["passed"] for c in body["checks"])
        assert all(c["elapsed_s"] >= 0.0 for c in body["checks"])


class TestErrorHandlers:
    def test_convergence_maps_to_409(self, raw):
        resp = raw.post("/_test/convergence", json={})
        assert resp.status_code == 409
        assert "synthetic divergence" in resp.json()["detail"]


class TestServiceClient:
    def test_in_process_health(self):
        with ServiceClient() as client:
            body = client.health()
        assert body["status"] == "ok"

    def test_in_process_table(self):
        with ServiceClient() as client:
            table = client.table("/spectrum", {"n_max": 5})
        direct = spectrum_table(5, OscillatorParams.from_r(1.0, 0.5))
        assert table.columns == direct.columns
        assert table.rows == direct.rows

    def test_in_process_verify(self):
        with ServiceClient() as client:
            body = client.verify(fast=True)
        assert body["all_passed"] is True

    def test_domain_error_surfaces(self):
        with ServiceClient() as client:
            with pytest.raises(DomainError):
                client.table("/spectrum", {"parities": ["even", "even"]})

    def test_schema_error_becomes_domain_error(self):
        with ServiceClient() as client:
            with pytest.raises(DomainError, match="invalid request"):
                client.table("/spectrum", {"mu": -3.0})


def _mock_client(handler):
    client = ServiceClient(base_url="http://mock")
    client._client = httpx.Client(transport=httpx.MockTransport(handler), base_url="http://mock")
    return client


class TestClientStatusMapping:
    def test_status_codes(self):
        def handler(request):
            mapping = {
                "/b400": httpx.Response(400, json={"detail": "out of domain"}),
                "/b409": httpx.Response(409, json={"detail": "no convergence"}),
                "/b422": httpx.Response(
                    422, json={"detail": [{"loc": ["body", "mu"], "msg": "too small"}]}
                ),
                "/b500": httpx.Response(500, text="boom"),
            }
            return mapping[request.url.path]

        with _mock_client(handler) as client:
            with pytest.raises(DomainError, match="out of domain"):
                client._post("/b400", {})
            with pytest.raises(ConsistencyError, match="no convergence"):
                client._post("/b409", {})
            with pytest.raises(DomainError, match="body.mu: too small"):
                client._post("/b422", {})
            with pytest.raises(RuntimeError, match="500"):
                client._post("/b500", {})

    def test_transport_error_becomes_oserror(self):
        def handler(request):
            raise httpx.ConnectError("refused")

        with _mock_client(handler) as client:
            with pytest.raises(OSError):
                client._post("/spectrum", {})
            with pytest.raises(OSError):
                client.health()
