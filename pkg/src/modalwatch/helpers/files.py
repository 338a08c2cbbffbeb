"""Module for writing output files without leaving partial results behind."""

import json
import os
import tempfile
from contextlib import contextmanager


class AtomicWriter:
    """Stages several output files next to their destination and renames them into
    place only once every file has been written.

    Example:
        with atomic_outputs("out") as writer:
            writer.write_text("report.csv", text)
            writer.write_bytes("model.fqs", payload)
    """

    def __init__(self, directory):
        self.directory = directory
        self._staged = []

    def path(self, name):
        return os.path.join(self.directory, name)

    def write_bytes(self, name, payload):
        handle, temporary = tempfile.mkstemp(
            prefix=f".{os.path.basename(name)}.", dir=self.directory
        )
        with os.fdopen(handle, "wb") as fp:
            fp.write(payload)
        self._staged.append((temporary, self.path(name)))
        return self.path(name)

    def write_text(self, name, text):
        return self.write_bytes(name, text.encode("utf-8"))

    def write_json(self, name, data):
        return self.write_text(name, json.dumps(data, indent=2, sort_keys=True) + "\n")

    def commit(self):
        for temporary, destination in self._staged:
            os.replace(temporary, destination)
        self._staged = []

    def discard(self):
        for temporary, _ in self._staged:
            if os.path.exists(temporary):
                os.remove(temporary)
        self._staged = []


@contextmanager
def atomic_outputs(directory):
    os.makedirs(directory, exist_ok=True)
    writer = AtomicWriter(directory)
    try:
        yield writer
    except BaseException:
        writer.discard()
        raise
    writer.commit()


def atomic_write_bytes(path, payload):
    directory = os.path.dirname(os.path.abspath(path))
    with atomic_outputs(directory) as writer:
        writer.write_bytes(os.path.basename(path), payload)
    return path
