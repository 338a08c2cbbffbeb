import operator

import numpy as np

OPERATORS = {
    "==": operator.eq,
    "!=": operator.ne,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}


class RecordCollection:
    """Wraps an ordered list of AnomalyRecord (or any objects with attributes) to
    make selecting and summarizing them easier.

    Example:
        RecordCollection(records).anomalous().where("score", ">=", 0.01).pluck("hour")
    """

    def __init__(self, items=None):
        self._items = list(items or [])

    def all(self):
        return self._items

    def count(self):
        return len(self._items)

    def is_empty(self):
        return not self._items

    def filter(self, callback):
        return self.__class__(item for item in self if callback(item))

    def where(self, key, *args):
        """Items whose attribute compares to a value, with == unless an operator
        is given: where("score", ">", 0.1)."""
        op, value = ("==", args[0]) if len(args) == 1 else args
        return self.filter(lambda item: OPERATORS[op](getattr(item, key), value))

    def where_between(self, key, low, high):
        """Items with low <= attribute < high. Either bound may be None."""
        return self.filter(
            lambda item: (low is None or getattr(item, key) >= low)
            and (high is None or getattr(item, key) < high)
        )

    def scored(self):
        return self.where("scored", True)

    def anomalous(self):
        return self.where("anomalous", True)

    def pluck(self, key):
        return [getattr(item, key) for item in self]

    def values(self, key, dtype=np.float64):
        return np.array(self.pluck(key), dtype=dtype)

    def __iter__(self):
        return iter(self._items)

    def __len__(self):
        return len(self._items)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return self.__class__(self._items[item])
        return self._items[item]

    def __eq__(self, other):
        if isinstance(other, RecordCollection):
            other = other.all()
        return self._items == list(other)

    def __repr__(self):
        return f"<RecordCollection items={len(self)}>"
