from inflection import underscore


class CanOverrideOptionsDefault:
    """Command mixin setting option defaults at instantiation, so tests and
    embedding code can point a command at other directories.
    Example: DetectCommand(out="/tmp/run", percentile=90).

    Dashed option names are given with underscores: SomeCommand(dry_run=True)
    for an option named dry-run.
    """

    def __init__(self, **kwargs):
        super().__init__()
        self.overriden_default = kwargs
        for option_name, option in self.config.options.items():
            default = self.overriden_default.get(underscore(option_name))
            if default is not None:
                option.set_default(str(default))
