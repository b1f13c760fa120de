"""Binary array container used for weight files and feature dumps.

Layout, bit-exact:

    8 bytes   magic "RSPSCRN1"
    4 bytes   little-endian u32: manifest length L
    L bytes   UTF-8 JSON manifest; its "arrays" entry lists
              {name, shape, offset, dtype: "f32le"} per array
    blob      contiguous little-endian float32 arrays, row-major,
              at the stated offsets (relative to blob start)

The writer is deterministic (sorted manifest keys, arrays laid out in the
order given), so serialize(load(bytes)) reproduces its input byte for byte.
"""

from __future__ import annotations

import json
import struct

import numpy as np

from respscreen.errors import BadMagic, ShapeMismatch

MAGIC = b"RSPSCRN1"
ARRAY_DTYPE = "f32le"
_F32LE = np.dtype("<f4")


def write_container(meta: dict, arrays: list[tuple[str, np.ndarray]]) -> bytes:
    """Serialize named float32 arrays behind a JSON manifest.

    ``meta`` supplies the manifest fields other than "arrays"; array order
    fixes the blob layout.
    """
    entries = []
    blobs = []
    offset = 0
    for name, array in arrays:
        data = np.ascontiguousarray(array, dtype=_F32LE)
        entries.append(
            {
                "name": name,
                "shape": list(data.shape),
                "offset": offset,
                "dtype": ARRAY_DTYPE,
            }
        )
        raw = data.tobytes()
        blobs.append(raw)
        offset += len(raw)

    manifest = dict(meta)
    manifest["arrays"] = entries
    encoded = json.dumps(manifest, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return MAGIC + struct.pack("<I", len(encoded)) + encoded + b"".join(blobs)


def read_container(data: bytes) -> tuple[dict, dict[str, np.ndarray]]:
    """Parse container bytes into (manifest, arrays-by-name).

    Raises BadMagic for header problems and ShapeMismatch whenever the
    declared shapes/offsets disagree with the actual blob bytes.
    """
    if len(data) < len(MAGIC) + 4:
        raise BadMagic("container shorter than its header")
    if data[: len(MAGIC)] != MAGIC:
        raise BadMagic(f"bad magic {data[:len(MAGIC)]!r}")
    (manifest_len,) = struct.unpack_from("<I", data, len(MAGIC))
    manifest_start = len(MAGIC) + 4
    manifest_end = manifest_start + manifest_len
    if manifest_end > len(data):
        raise BadMagic("declared manifest length runs past end of file")
    try:
        manifest = json.loads(data[manifest_start:manifest_end].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise BadMagic(f"manifest is not valid UTF-8 JSON: {exc}") from None
    if not isinstance(manifest, dict) or not isinstance(manifest.get("arrays"), list):
        raise BadMagic("manifest must be an object with an 'arrays' list")

    blob = data[manifest_end:]
    arrays: dict[str, np.ndarray] = {}
    expected_offset = 0
    for entry in manifest["arrays"]:
        name, shape, offset, dtype = _entry_fields(entry)
        if dtype != ARRAY_DTYPE:
            raise ShapeMismatch(f"array {name!r} has unsupported dtype {dtype!r}")
        if offset != expected_offset:
            raise ShapeMismatch(f"array {name!r} at offset {offset}, expected {expected_offset}")
        count = 1
        for dim in shape:
            if not isinstance(dim, int) or dim < 0:
                raise ShapeMismatch(f"array {name!r} has invalid shape {shape}")
            count *= dim
        nbytes = count * _F32LE.itemsize
        if offset + nbytes > len(blob):
            raise ShapeMismatch(f"array {name!r} shape {shape} exceeds blob size")
        flat = np.frombuffer(blob, dtype=_F32LE, count=count, offset=offset)
        arrays[name] = flat.reshape(shape).astype(np.float64)
        expected_offset = offset + nbytes

    if expected_offset != len(blob):
        raise ShapeMismatch(
            f"blob holds {len(blob)} bytes but arrays account for {expected_offset}"
        )
    return manifest, arrays


def _entry_fields(entry) -> tuple[str, list, int, str]:
    if not isinstance(entry, dict):
        raise ShapeMismatch("array entry must be an object")
    try:
        name = entry["name"]
        shape = entry["shape"]
        offset = entry["offset"]
        dtype = entry["dtype"]
    except KeyError as exc:
        raise ShapeMismatch(f"array entry missing field {exc}") from None
    if not isinstance(shape, list) or not isinstance(offset, int):
        raise ShapeMismatch(f"array {name!r} entry malformed")
    return name, shape, offset, dtype
