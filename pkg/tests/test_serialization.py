"""Tests for the JSON document schemas."""

import numpy as np
import pytest

from ctrlchan.channels import standard_channel
from ctrlchan.implementations import ChannelImplementation
from ctrlchan.sampling import random_channel, random_env
from ctrlchan.serialization import (
    SchemaError,
    channel_from_json,
    channel_to_json,
    ensemble_from_json,
    implementation_from_json,
    implementation_to_json,
    load_json,
    matrix_from_json,
    matrix_to_json,
    parse_channel,
    state_from_json,
    state_to_json,
    tmatrix_from_json,
    tmatrix_to_json,
)


class TestMatrixRoundtrip:
    def test_roundtrip(self):
        rng = np.random.default_rng(0)
        m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert np.array_equal(matrix_from_json(matrix_to_json(m), "m"), m)

    def test_jagged_rows_rejected(self):
        doc = [[[1.0, 0.0], [0.0, 0.0]], [[1.0, 0.0]]]
        with pytest.raises(SchemaError, match=r"m\[1\]"):
            matrix_from_json(doc, "m")

    def test_bad_pair_rejected(self):
        doc = [[[1.0, 0.0], [0.0, "x"]]]
        with pytest.raises(SchemaError, match=r"m\[0\]\[1\]"):
            matrix_from_json(doc, "m")


class TestChannelSchema:
    def test_roundtrip_without_env(self):
        ch = random_channel(2, 3, np.random.default_rng(1))
        doc = channel_to_json(ch)
        rebuilt = channel_from_json(doc)
        assert all(np.array_equal(a, b) for a, b in zip(rebuilt.kraus, ch.kraus))
        _, env = parse_channel(doc)
        assert env is None

    def test_roundtrip_with_env(self):
        rng = np.random.default_rng(2)
        impl = ChannelImplementation(random_channel(2, 2, rng), random_env(2, rng))
        rebuilt = implementation_from_json(implementation_to_json(impl))
        assert np.array_equal(rebuilt.env, impl.env)

    def test_missing_env_rejected_for_implementation(self):
        doc = channel_to_json(standard_channel("identity", 2))
        with pytest.raises(SchemaError, match="env"):
            implementation_from_json(doc)

    def test_env_length_mismatch(self):
        doc = channel_to_json(standard_channel("identity", 2))
        doc["env"] = [[1.0, 0.0], [0.0, 0.0]]
        with pytest.raises(SchemaError, match="env"):
            implementation_from_json(doc)

    def test_wrong_kraus_shape(self):
        doc = {"d": 2, "kraus": [matrix_to_json(np.eye(3))]}
        with pytest.raises(SchemaError, match=r"kraus\[0\]"):
            channel_from_json(doc)

    def test_missing_field(self):
        with pytest.raises(SchemaError, match="kraus"):
            channel_from_json({"d": 2})

    def test_semantic_errors_surface_from_constructor(self):
        doc = {"d": 2, "kraus": [matrix_to_json(np.eye(2) * 2.0)]}
        with pytest.raises(ValueError, match="trace-preserving"):
            channel_from_json(doc)


class TestOtherSchemas:
    def test_tmatrix_roundtrip(self):
        t = np.array([[0.0, 0.5j], [0.25, 0.0]], dtype=complex)
        assert np.array_equal(tmatrix_from_json(tmatrix_to_json(t)), t)

    def test_state_roundtrip(self):
        rho = np.eye(2, dtype=complex) / 2
        assert np.array_equal(state_from_json(state_to_json(rho)), rho)

    def test_ensemble(self):
        doc = {
            "d": 2,
            "items": [
                {"p": 0.6, "rho": matrix_to_json(np.diag([1.0, 0.0]))},
                {"p": 0.4, "rho": matrix_to_json(np.diag([0.0, 1.0]))},
            ],
        }
        ens = ensemble_from_json(doc)
        assert len(ens.items) == 2 and ens.dim == 2

    def test_ensemble_bad_probability(self):
        doc = {"d": 2, "items": [{"p": "heavy", "rho": matrix_to_json(np.eye(2) / 2)}]}
        with pytest.raises(SchemaError, match=r"items\[0\]\.p"):
            ensemble_from_json(doc)

    def test_dimension_field_validation(self):
        with pytest.raises(SchemaError, match=r"\.d"):
            tmatrix_from_json({"d": -1, "t": matrix_to_json(np.eye(2))})


class TestLoadJson:
    def test_syntax_error_reports_line(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"d": 2,\n  "kraus": [}')
        with pytest.raises(SchemaError, match="line 2"):
            load_json(path)

    def test_roundtrip_via_file(self, tmp_path):
        import json

        ch = standard_channel("phase_flip", 2, 0.3)
        path = tmp_path / "channel.json"
        path.write_text(json.dumps(channel_to_json(ch, np.array([0.6, 0.8]))))
        impl = implementation_from_json(load_json(path))
        assert impl.dim == 2 and len(impl.env) == 2
