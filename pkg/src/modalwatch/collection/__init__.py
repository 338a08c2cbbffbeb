from .RecordCollection import RecordCollection
