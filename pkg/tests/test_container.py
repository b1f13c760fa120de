import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from respscreen.errors import BadMagic, ShapeMismatch
from respscreen.model.container import MAGIC, read_container, write_container


def sample_blob() -> bytes:
    return write_container(
        {"format_version": 1, "category": "vowel-a", "input_dim": 3, "hidden_dim": 2},
        [("a", np.arange(6.0).reshape(2, 3)), ("b", np.array([1.5]))],
    )


class TestRoundTrip:
    def test_arrays_and_meta_survive(self):
        manifest, arrays = read_container(sample_blob())
        assert manifest["category"] == "vowel-a"
        assert manifest["input_dim"] == 3
        np.testing.assert_array_equal(arrays["a"], np.arange(6.0).reshape(2, 3))
        assert arrays["b"].tolist() == [1.5]

    def test_writer_is_deterministic(self):
        assert sample_blob() == sample_blob()

    def test_write_read_write_is_byte_identical(self):
        blob = sample_blob()
        manifest, arrays = read_container(blob)
        meta = {k: v for k, v in manifest.items() if k != "arrays"}
        names = [entry["name"] for entry in manifest["arrays"]]
        again = write_container(meta, [(n, arrays[n]) for n in names])
        assert again == blob

    @given(
        arrays=st.lists(
            hnp.arrays(
                dtype=np.float32,
                shape=hnp.array_shapes(min_dims=1, max_dims=3, max_side=5),
                elements=st.floats(-1e6, 1e6, width=32),
            ),
            min_size=1,
            max_size=4,
        )
    )
    @settings(max_examples=50, deadline=None)
    def test_random_arrays_round_trip(self, arrays):
        named = [(f"arr{i}", a) for i, a in enumerate(arrays)]
        _, out = read_container(write_container({"format_version": 1}, named))
        for name, original in named:
            np.testing.assert_array_equal(out[name], original.astype(np.float64))


class TestRejections:
    def test_bad_magic(self):
        blob = b"WRONGMG1" + sample_blob()[8:]
        with pytest.raises(BadMagic):
            read_container(blob)

    def test_truncated_header(self):
        with pytest.raises(BadMagic):
            read_container(MAGIC[:4])

    def test_manifest_length_past_end(self):
        blob = MAGIC + struct.pack("<I", 10_000) + b"{}"
        with pytest.raises(BadMagic):
            read_container(blob)

    def test_manifest_not_json(self):
        payload = b"not json at all"
        blob = MAGIC + struct.pack("<I", len(payload)) + payload
        with pytest.raises(BadMagic):
            read_container(blob)

    def test_blob_shorter_than_shapes_claim(self):
        blob = sample_blob()
        with pytest.raises(ShapeMismatch):
            read_container(blob[:-4])

    def test_trailing_garbage_rejected(self):
        with pytest.raises(ShapeMismatch):
            read_container(sample_blob() + b"\x00\x00\x00\x00")

    def test_wrong_dtype_tag_rejected(self):
        blob = sample_blob()
        with pytest.raises(ShapeMismatch):
            read_container(blob.replace(b"f32le", b"f64le"))

    def test_noncontiguous_offsets_rejected(self):
        # Shift the second array's declared offset by one float.
        blob = sample_blob()
        marker = b'"offset":24'
        assert marker in blob
        with pytest.raises(ShapeMismatch):
            read_container(blob.replace(marker, b'"offset":28'))
