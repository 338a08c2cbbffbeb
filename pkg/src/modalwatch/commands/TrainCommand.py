from ..config import layer
from ..exceptions import InsufficientData
from ..forecaster import ModelConfig, Trainer, save
from ..forecaster.Trainer import DEFAULT_SPLIT
from ..helpers.files import atomic_outputs
from ..timeseries.calendar import format_timestamp
from ..timeseries.gaps import DEFAULT_LIMIT, DEFAULT_POLICY, fill_gaps
from .Command import Command


class TrainCommand(Command):
    """
    Train the quantile forecaster on monitoring data.

    train
        {data : Path to the monitoring CSV}
        {--o|out=out/train : The directory model.fqs is written to}
        {--f|from=? : First hour of the training range, ISO-8601}
        {--t|to=? : End of the training range (excluded), ISO-8601}
        {--s|seed=? : Overrides the seed of the model}
    """

    def handle(self):
        module = self.config_module()
        model_settings = layer(
            self.settings(module, "MODEL"), {"seed": self.integer_option("seed")}
        )
        training = layer(
            {"split": list(DEFAULT_SPLIT)},
            self.settings(module, "TRAINING"),
            {"from": self.option("from"), "to": self.option("to")},
        )
        gaps = layer(
            {"policy": DEFAULT_POLICY, "limit": DEFAULT_LIMIT}, self.settings(module, "GAPS")
        )

        config = ModelConfig(**model_settings)
        start = self.timestamp(training.get("from"), "from")
        end = self.timestamp(training.get("to"), "to")
        self.check_range(start, end)

        series = self.read_series(self.argument("data")).between(start, end)
        if len(series) < 2:
            raise InsufficientData(
                f"The training range holds {len(series)} sample(s) of "
                f"{self.argument('data')}, nothing to train on."
            )

        model = Trainer(config, split=tuple(training["split"])).train(
            fill_gaps(series, policy=gaps["policy"], limit=gaps["limit"])
        )

        with atomic_outputs(self.option("out")) as writer:
            writer.write_bytes("model.fqs", save(model))
            writer.write_json(
                "effective_config.json",
                {
                    "command": "train",
                    "data": self.argument("data"),
                    "model": config.serialize(),
                    "training": {
                        "split": list(training["split"]),
                        "from": None if start is None else format_timestamp(start),
                        "to": None if end is None else format_timestamp(end),
                    },
                    "gaps": gaps,
                },
            )

        loss = model.best_validation_loss
        if loss is None:
            self.comment("No epoch was run, the model keeps its initial parameters.")
        else:
            self.line(f"<info>Validation loss:</info> {loss:.6f}")
        self.info(f"Model written to {writer.path('model.fqs')}")
