"""Command line entry point.

Installed as the "modalwatch" console script. Can also be run with
"python -m modalwatch.commands.Entry".
"""

from cleo import Application

from .. import __version__
from . import DetectCommand, EvalCommand, ReportCommand, SynthCommand, TrainCommand

application = Application("modalwatch", __version__)

application.add(SynthCommand())
application.add(TrainCommand())
application.add(DetectCommand())
application.add(EvalCommand())
application.add(ReportCommand())

if __name__ == "__main__":
    application.run()
