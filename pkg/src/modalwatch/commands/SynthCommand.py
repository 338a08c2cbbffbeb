from ..helpers.files import atomic_outputs
from ..synthbench import Scenario, generate
from ..timeseries.ingest import to_csv
from .Command import Command


class SynthCommand(Command):
    """
    Generate a labeled synthetic monitoring dataset.

    synth
        {scenario : Path to the YAML scenario file}
        {--o|out=out/synth : The directory data.csv and labels.csv are written to}
        {--s|seed=? : Overrides the seed of the scenario}
    """

    def handle(self):
        scenario = Scenario.load(self.argument("scenario"))
        seed = self.integer_option("seed")
        if seed is not None:
            scenario = scenario.replace(seed=seed)

        series, labels = generate(scenario)

        with atomic_outputs(self.option("out")) as writer:
            writer.write_text("data.csv", to_csv(series))
            writer.write_text("labels.csv", labels.to_csv())
            writer.write_json(
                "effective_config.json", {"command": "synth", "scenario": scenario.serialize()}
            )

        self.info(
            f"Generated {len(series)} hours with {len(scenario.events)} event(s) "
            f"into {self.option('out')}"
        )
