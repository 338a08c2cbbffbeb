class ModalWatchException(Exception):
    pass


class ConfigurationError(ModalWatchException):
    pass


class ConfigurationNotFound(ConfigurationError):
    pass


class InvalidConfiguration(ConfigurationError):
    pass


class MalformedRow(ModalWatchException):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownColumn(MalformedRow):
    pass


class DuplicateTimestamp(MalformedRow):
    pass


class NonHourlyTimestamp(MalformedRow):
    pass


class InvalidSample(ModalWatchException):
    pass


class SeriesTooShort(ModalWatchException):
    pass


class EmptyRange(ModalWatchException):
    pass


class DegenerateChannel(ModalWatchException):
    def __init__(self, channel):
        self.channel = channel
        super().__init__(
            f"Channel '{channel}' has zero standard deviation and cannot be standardized."
        )


class WindowMismatch(ModalWatchException):
    pass


class NonFiniteValue(ModalWatchException):
    def __init__(self, message, index=None):
        self.index = index
        if index is not None:
            message = f"{message} (parameter index {index})"
        super().__init__(message)


class EmptyBatch(ModalWatchException):
    pass


class InsufficientData(ModalWatchException):
    pass


class TrainingDiverged(ModalWatchException):
    def __init__(self, epoch, loss):
        self.epoch = epoch
        self.loss = loss
        super().__init__(f"Training diverged at epoch {epoch} (loss={loss}).")


class CorruptModelFile(ModalWatchException):
    pass


class UnsupportedModelVersion(CorruptModelFile):
    pass


class InvalidPercentile(ConfigurationError):
    pass


class InvalidBand(ModalWatchException):
    pass


class InvalidWeight(ModalWatchException):
    pass


class InvalidScenario(ConfigurationError):
    pass


class OverlappingEvents(InvalidScenario):
    def __init__(self, event_ids):
        self.event_ids = list(event_ids)
        super().__init__(
            "Overlapping events on the same channel: " + ", ".join(self.event_ids)
        )


class TimelineMismatch(ModalWatchException):
    pass


class RendererUnavailable(ConfigurationError):
    pass
