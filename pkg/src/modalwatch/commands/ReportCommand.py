import glob
import io
import os

import pandas

from ..anomaly import find_episodes, parse_report
from ..anomaly.reports import read_plot_data
from ..anomaly.svg import render_svg
from ..helpers.files import atomic_outputs
from .Command import Command

EPISODE_COLUMNS = ("start", "end", "hours", "peak", "peak_score", "dominant_channel", "channels")


class ReportCommand(Command):
    """
    Summarize a detection run into anomaly episodes.

    report
        {directory : Output directory of a detect run}
        {--o|out=? : Where episodes.csv is written, the detect directory by default}
        {--svg : Render report.svg from the plot data}
    """

    def handle(self):
        directory = self.argument("directory")
        records = parse_report(self.read_text(os.path.join(directory, "report.csv")))
        divisors = self.run_divisors(directory)
        episodes = find_episodes(records, divisors)

        frame = pandas.DataFrame(
            [episode.serialize() for episode in episodes], columns=list(EPISODE_COLUMNS)
        )
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, lineterminator="\n", float_format="%.6g")

        out = self.option("out") or directory
        with atomic_outputs(out) as writer:
            writer.write_text("episodes.csv", buffer.getvalue())
            # the detect run keeps its own effective_config.json
            if os.path.abspath(out) != os.path.abspath(directory):
                writer.write_json(
                    "effective_config.json",
                    {
                        "command": "report",
                        "directory": directory,
                        "divisors": list(divisors),
                        "svg": bool(self.option("svg")),
                    },
                )
            if self.option("svg"):
                writer.write_bytes("report.svg", render_svg(self._plot_frames(directory)))

        if not episodes:
            self.info("No anomalous hour in the report.")
            return

        table = self.table()
        table.set_header_row(["Start", "End", "Hours", "Peak score", "Dominant", "Channels"])
        table.set_rows(
            [
                [
                    f"<comment>{row['start']}</comment>",
                    row["end"],
                    str(row["hours"]),
                    f"{row['peak_score']:.4f}",
                    f"<info>{row['dominant_channel']}</info>",
                    row["channels"],
                ]
                for row in (episode.serialize() for episode in episodes)
            ]
        )
        table.render(self.io)

    def _plot_frames(self, directory):
        frames = {}
        for path in sorted(glob.glob(os.path.join(directory, "plot_*.csv"))):
            channel = os.path.basename(path)[len("plot_") : -len(".csv")]
            frames[channel] = read_plot_data(self.read_text(path))
        if not frames:
            raise FileNotFoundError(f"No plot data found in '{directory}'.")
        return frames
