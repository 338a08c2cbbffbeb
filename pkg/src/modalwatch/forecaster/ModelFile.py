"""Binary model container.

Layout, all integers big-endian:

    b"FQS1" | version u32 | header length u32 | header JSON | parameters f64 LE | crc32 u32

The header holds the config, the normalization statistics, the training log and
the parameter layout. The checksum covers everything before it.
"""

import json
import struct
import zlib

import numpy as np

from ..exceptions import CorruptModelFile, InvalidConfiguration, UnsupportedModelVersion
from ..helpers.files import atomic_write_bytes
from ..timeseries.NormStats import NormStats
from .ModelConfig import ModelConfig
from .ModelState import ModelState
from .network import parameter_layout

MAGIC = b"FQS1"
VERSION = 1

_PREAMBLE = struct.Struct(">4sII")
_CHECKSUM = struct.Struct(">I")


def save(model):
    """Serializes a model. Equal models give byte-identical streams.

    Returns:
        bytes
    """
    header = json.dumps(
        {
            "config": model.config.serialize(),
            "stats": model.stats.serialize(),
            "log": model.log,
            "layout": [[name, list(shape)] for name, shape in parameter_layout(model.config)],
        },
        sort_keys=True,
        separators=(",", ":"),
    ).encode("utf-8")
    payload = model.flat().astype("<f8").tobytes()
    body = _PREAMBLE.pack(MAGIC, VERSION, len(header)) + header + payload
    return body + _CHECKSUM.pack(zlib.crc32(body))


def load(stream):
    """Reads a model written by save().

    Arguments:
        stream {bytes} -- The full container.

    Raises:
        CorruptModelFile: on a bad magic string, truncation or checksum mismatch.
        UnsupportedModelVersion: on a format version this build cannot read.

    Returns:
        ModelState
    """
    stream = bytes(stream)
    if len(stream) < _PREAMBLE.size + _CHECKSUM.size:
        raise CorruptModelFile("Model file is truncated.")

    magic, version, header_length = _PREAMBLE.unpack_from(stream)
    if magic != MAGIC:
        raise CorruptModelFile("Not a model file (bad magic string).")
    if version != VERSION:
        raise UnsupportedModelVersion(
            f"Model file format version {version} is not supported (expected {VERSION})."
        )

    body, (checksum,) = stream[: -_CHECKSUM.size], _CHECKSUM.unpack(stream[-_CHECKSUM.size :])
    header_end = _PREAMBLE.size + header_length
    if header_end > len(body):
        raise CorruptModelFile("Model file is truncated.")
    if zlib.crc32(body) != checksum:
        raise CorruptModelFile("Model file checksum mismatch.")

    try:
        header = json.loads(body[_PREAMBLE.size : header_end].decode("utf-8"))
        config = ModelConfig.hydrate(header["config"])
        stats = NormStats.hydrate(header["stats"])
        stored_layout, log = header["layout"], header["log"]
    except (ValueError, KeyError, TypeError, InvalidConfiguration) as e:
        raise CorruptModelFile(f"Model file header is unreadable: {e}") from e

    layout = parameter_layout(config)
    if [[name, list(shape)] for name, shape in layout] != stored_layout:
        raise CorruptModelFile("Model file parameter layout does not match its config.")

    payload = body[header_end:]
    size = sum(int(np.prod(shape)) for _, shape in layout)
    if len(payload) != size * 8:
        raise CorruptModelFile(
            f"Model file holds {len(payload)} parameter bytes, expected {size * 8}."
        )

    model = ModelState(config, _zeros(layout), stats=stats, log=log)
    return model.with_flat(np.frombuffer(payload, dtype="<f8").astype(np.float64))


def _zeros(layout):
    return {name: np.zeros(shape) for name, shape in layout}


def save_file(model, path):
    atomic_write_bytes(path, save(model))


def load_file(path):
    with open(path, "rb") as handle:
        return load(handle.read())
