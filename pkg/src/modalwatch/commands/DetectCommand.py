from ..anomaly import DetectorConfig, SlidingDetector, plot_data, to_report_csv
from ..anomaly.reports import read_plot_data
from ..anomaly.svg import render_svg
from ..collection import RecordCollection
from ..config import layer
from ..exceptions import SeriesTooShort
from ..forecaster.ModelFile import load_file
from ..helpers.files import atomic_outputs
from ..timeseries.calendar import format_epoch_hour, from_epoch_hour, to_epoch_hour
from ..timeseries.gaps import DEFAULT_LIMIT, DEFAULT_POLICY, fill_gaps
from ..timeseries.ingest import parse_timestamp
from .Command import Command


class DetectCommand(Command):
    """
    Run sliding-window anomaly detection with a trained model.

    detect
        {model : Path to a model.fqs written by train}
        {data : Path to the monitoring CSV}
        {--o|out=out/detect : The directory the report and plot data are written to}
        {--f|from=? : First hour to score, ISO-8601}
        {--t|to=? : End of the scored range (excluded), ISO-8601}
        {--p|percentile=? : Band percentile, one of 75, 90 or 99}
        {--svg : Also render the plot data as report.svg}
    """

    def handle(self):
        module = self.config_module()
        model = load_file(self.argument("model"))
        detector_settings = layer(
            {"window": model.config.window},
            self.settings(module, "DETECTOR"),
            {"percentile": self.integer_option("percentile")},
        )
        gaps = layer(
            {"policy": DEFAULT_POLICY, "limit": DEFAULT_LIMIT}, self.settings(module, "GAPS")
        )
        detector = SlidingDetector(model, DetectorConfig(**detector_settings))

        start = self.timestamp(self.option("from"), "from")
        end = self.timestamp(self.option("to"), "to")
        self.check_range(start, end)

        series = self.read_series(self.argument("data"))
        # the first scored hour needs T hours of context before it
        context = None
        if start is not None:
            context = from_epoch_hour(to_epoch_hour(start) - model.config.window)
        selected = series.between(context, end)
        if len(selected) < 2:
            raise SeriesTooShort(
                f"The detection range holds {len(selected)} sample(s), "
                f"at least {model.config.window + 1} hours are needed."
            )

        records = RecordCollection(
            detector.run(fill_gaps(selected, policy=gaps["policy"], limit=gaps["limit"]))
        ).where_between("hour", None if start is None else to_epoch_hour(start), None)
        if not records:
            raise SeriesTooShort("No hour of the detection range can be reported.")
        self._warn_on_overlap(model, records)

        plots = plot_data(records.all())
        with atomic_outputs(self.option("out")) as writer:
            writer.write_text("report.csv", to_report_csv(records.all()))
            for name, text in plots.items():
                writer.write_text(name, text)
            if self.option("svg"):
                frames = {
                    name[len("plot_") : -len(".csv")]: read_plot_data(text)
                    for name, text in plots.items()
                }
                writer.write_bytes("report.svg", render_svg(frames))
            writer.write_json(
                "effective_config.json",
                {
                    "command": "detect",
                    "model": self.argument("model"),
                    "data": self.argument("data"),
                    "detector": detector.config.serialize(),
                    "gaps": gaps,
                    "range": {
                        "from": format_epoch_hour(records[0].hour),
                        "to": format_epoch_hour(records[-1].hour + 1),
                    },
                    "divisors": [float(value) for value in detector.divisors],
                },
            )

        scored = records.scored().count()
        anomalous = records.anomalous().count()
        self.line(
            f"<info>Scored</info> {scored} of {len(records)} hours, "
            f"<info>anomalous</info> {anomalous}"
        )
        if scored < len(records):
            self.comment(f"{len(records) - scored} hour(s) could not be scored (gaps or warm-up).")
        self.info(f"Report written to {writer.path('report.csv')}")

    def _warn_on_overlap(self, model, records):
        trained = model.training_range
        if trained is None:
            return
        trained_from, trained_to = (to_epoch_hour(parse_timestamp(value)) for value in trained)
        if records[0].hour < trained_to and trained_from < records[-1].hour + 1:
            self.line_error(
                f"Warning: the detection range overlaps the training range "
                f"[{trained[0]}, {trained[1]}), scores there are optimistic.",
                style="comment",
            )
