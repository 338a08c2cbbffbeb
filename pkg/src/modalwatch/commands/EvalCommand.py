import os

from ..anomaly import parse_report
from ..helpers.files import atomic_outputs
from ..synthbench import Labels, alarm_threshold, evaluate, sweep
from .Command import Command


class EvalCommand(Command):
    """
    Score an anomaly report against synthetic ground truth.

    eval
        {report : Path to a report.csv written by detect}
        {labels : Path to a labels.csv written by synth}
        {--o|out=out/eval : The directory metrics.json is written to}
        {--tolerance=2 : Matching tolerance around each event, in hours}
        {--threshold=0 : Minimum score of a flag}
        {--calibration=? : A report.csv of a detect run over clean data; sets the threshold instead of --threshold}
        {--alarm-rate=0.025 : Share of the calibration hours allowed to stay flagged}
        {--sweep : Add a threshold sweep to the metrics}
    """

    def handle(self):
        records = parse_report(self.read_text(self.argument("report")))
        labels = Labels.parse(self.read_text(self.argument("labels")))
        tolerance = self.integer_option("tolerance")
        threshold = self.float_option("threshold")
        alarm_rate = self.float_option("alarm-rate")
        calibration = self.option("calibration")
        if calibration:
            threshold = alarm_threshold(parse_report(self.read_text(calibration)), alarm_rate)
            self.line(f"Threshold calibrated on {calibration}: <info>{threshold:.6g}</info>")
        divisors = self.run_divisors(os.path.dirname(self.argument("report")))

        report = evaluate(
            records, labels, tolerance=tolerance, threshold=threshold, divisors=divisors
        )
        if self.option("sweep"):
            report = report.with_sweep(sweep(records, labels, tolerance=tolerance))

        with atomic_outputs(self.option("out")) as writer:
            writer.write_text("metrics.json", report.to_json())
            writer.write_json(
                "effective_config.json",
                {
                    "command": "eval",
                    "report": self.argument("report"),
                    "labels": self.argument("labels"),
                    "tolerance": tolerance,
                    "threshold": threshold,
                    "calibration": calibration,
                    "alarm_rate": alarm_rate if calibration else None,
                    "divisors": list(divisors),
                    "sweep": bool(self.option("sweep")),
                },
            )

        table = self.table()
        table.set_header_row(["Metric", "Value"])
        table.set_rows(
            [
                ["precision", f"{report.precision:.3f}"],
                ["recall", f"{report.recall:.3f}"],
                ["F1", f"{report.f1:.3f}"],
                ["false positive rate", f"{report.false_positive_rate:.4f}"],
                ["events hit", f"{report.hits}/{len(report.events)}"],
            ]
        )
        table.render(self.io)

        for event in report.misses:
            self.line(f"<comment>Missed</comment> {event.event_id} ({event.serialize()['start']})")
        for note in report.notes:
            self.comment(f"Note: {note}")
        self.info(f"Metrics written to {writer.path('metrics.json')}")
