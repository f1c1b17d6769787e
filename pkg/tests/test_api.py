import math

import pytest
from fastapi.testclient import TestClient

from fracgeo import __version__
from fracgeo.api.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestHealth:
    def test_reports_version(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok", "version": __version__}


class TestIntegrate:
    def test_fractional_stieltjes_route(self, client):
        response = client.post(
            "/integrate",
            json={"kind": "rl", "f": "1", "alpha": 0.5, "a": 0.0, "t": 1.0},
        )
        assert response.status_code == 200
        body = response.json()
        assert body["value"] == pytest.approx(1.1283791670955126, rel=1e-6)
        assert body["panels"] >= 32

    def test_fractional_kernel_route(self, client):
        response = client.post(
            "/integrate",
            json={
                "kind": "rl",
                "method": "kernel",
                "f": "t^2",
                "alpha": 1.5,
                "t": 1.0,
            },
        )
        assert response.status_code == 200
        assert response.json()["value"] == pytest.approx(0.17194349212884, rel=1e-6)

    def test_riemann(self, client):
        response = client.post(
            "/integrate", json={"kind": "riemann", "f": "sin(t)", "a": 0.0, "b": math.pi}
        )
        assert response.json()["value"] == pytest.approx(2.0, rel=1e-7)

    def test_stieltjes_requires_g(self, client):
        response = client.post(
            "/integrate", json={"kind": "stieltjes", "f": "t", "a": 0.0, "b": 1.0}
        )
        assert response.status_code == 422

    def test_negative_alpha_rejected(self, client):
        response = client.post(
            "/integrate", json={"kind": "rl", "f": "1", "alpha": -1.0, "t": 1.0}
        )
        assert response.status_code == 422

    def test_expression_error_maps_to_400(self, client):
        response = client.post(
            "/integrate", json={"kind": "riemann", "f": "t^^2", "a": 0.0, "b": 1.0}
        )
        assert response.status_code == 400
        assert response.json()["error_type"] == "ExprSyntaxError"


class TestDerive:
    def test_fractal(self, client):
        response = client.post(
            "/derive", json={"kind": "fractal", "f": "t^2", "alpha": 1.0, "t": 3.0}
        )
        body = response.json()
        assert body["converged"] is True
        assert body["value"] == pytest.approx(6.0, rel=1e-8)
        assert body["sequence"]

    def test_path(self, client):
        response = client.post(
            "/derive", json={"kind": "path", "f": "t", "g": "t", "a": 0.0, "t": 1.0}
        )
        assert response.json()["value"] == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-7)

    def test_flat_generator_maps_to_400(self, client):
        response = client.post(
            "/derive", json={"kind": "stieltjes", "f": "t", "g": "0*t", "t": 1.0}
        )
        assert response.status_code == 400
        assert response.json()["error_type"] == "DegenerateDenominatorError"

    def test_missing_g_rejected(self, client):
        response = client.post("/derive", json={"kind": "stieltjes", "f": "t", "t": 1.0})
        assert response.status_code == 422


class TestScene:
    def test_document_shape(self, client):
        response = client.post(
            "/scene", json={"f": "t", "g": "t^2", "a": 0.0, "b": 1.0, "n": 16}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["meta"]["n"] == 16
        assert body["meta"]["tool_version"] == __version__
        assert len(body["fence"]) == 17
        assert [t["plane"] for t in body["tangents"]] == ["ty", "fence", "tau_y"]

    def test_degenerate_tangent_is_null(self, client):
        response = client.post(
            "/scene", json={"f": "t", "g": "0*t", "a": 0.0, "b": 1.0, "n": 16}
        )
        assert response.json()["tangents"][2]["slope"] is None

    def test_rejects_tiny_grid(self, client):
        response = client.post(
            "/scene", json={"f": "t", "g": "t", "a": 0.0, "b": 1.0, "n": 4}
        )
        assert response.status_code == 422


class TestAnimate:
    def test_frame_areas(self, client):
        response = client.post(
            "/animate",
            json={
                "f": "1",
                "alpha": 1.0,
                "a": 0.0,
                "b": 1.0,
                "frames": 4,
                "n": 64,
                "tol_rel": 1e-6,
            },
        )
        assert response.status_code == 200
        body = response.json()
        assert len(body["frames"]) == 4
        times = [row["t"] for row in body["areas"]]
        assert times == pytest.approx([0.25, 0.5, 0.75, 1.0])
        for row in body["areas"]:
            assert row["area_tau_y"] == pytest.approx(row["t"], abs=1e-3)
            assert row["rl_value"] == pytest.approx(row["t"], rel=1e-6)


class TestVerify:
    def test_quick_passes(self, client):
        response = client.post("/verify", json={"level": "quick"})
        assert response.status_code == 200
        body = response.json()
        assert body["all_passed"] is True
        suites = [row["suite"] for row in body["rows"]]
        assert "formulation equivalence" in suites

    def test_rejects_unknown_level(self, client):
        response = client.post("/verify", json={"level": "exhaustive"})
        assert response.status_code == 422
