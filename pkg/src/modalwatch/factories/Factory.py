from faker import Faker

SEED = 2016


class Factory:
    """Builds domain objects from registered fake-data recipes. Every recipe gets
    the same seeded Faker, so a test sees the same values on every run.

    Example:
        Factory.register(AnomalyEvent, lambda faker: {"id": faker.slug()})
        event = Factory(AnomalyEvent).make({"magnitude": 4.0})
    """

    _factories = {}
    _after_makes = {}
    _faker = None

    @property
    def faker(self):
        if not Factory._faker:
            Factory._faker = Faker()
            Factory._faker.seed_instance(SEED)
        return Factory._faker

    @classmethod
    def reseed(cls, seed=SEED):
        if cls._faker:
            cls._faker.seed_instance(seed)

    def __init__(self, model, number=1):
        self.model = model
        self.number = number

    def _attributes(self, overrides, name):
        called = self._factories[self.model][name](self.faker)
        called.update(overrides)
        return called

    def make(self, dictionary=None, name="default"):
        """Hydrates one object, or a list when number > 1 or a list of overrides
        is given (one object per entry)."""
        if dictionary is None:
            dictionary = {}

        if isinstance(dictionary, list):
            overrides = dictionary
        elif self.number == 1:
            return self.run_after_makes(self.model.hydrate(self._attributes(dictionary, name)))
        else:
            overrides = [dictionary] * self.number

        return [
            self.run_after_makes(self.model.hydrate(self._attributes(entry, name)))
            for entry in overrides
        ]

    @classmethod
    def register(cls, model, call, name="default"):
        cls._factories.setdefault(model, {})[name] = call

    @classmethod
    def after_making(cls, model, call, name="default"):
        cls._after_makes.setdefault(model, {})[name] = call

    def run_after_makes(self, made):
        for callback in self._after_makes.get(self.model, {}).values():
            made = callback(made, self.faker) or made
        return made
