class Pipeline:
    def __init__(self, *steps):
        self.steps = list(steps)

    def then(self, step):
        return Pipeline(*(self.steps + [step]))

    def __call__(self, data):
        for step in self.steps:
            data = step(data)
        return data

    def __len__(self):
        return len(self.steps)


def compose(*fns):
    def run(x):
        for fn in reversed(fns):
            x = fn(x)
        return x
    return run


def tap(fn):
    def inner(data):
        fn(data)
        return data
    return inner
