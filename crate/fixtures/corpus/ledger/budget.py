class Budget:
    def __init__(self, limits):
        self.limits = dict(limits)
        self.spent = {k: 0 for k in self.limits}

    def spend(self, category, amount):
        if category not in self.limits:
            raise KeyError(category)
        self.spent[category] += amount
        return self.remaining(category)

    def remaining(self, category):
        return self.limits[category] - self.spent[category]

    def over(self):
        return [c for c in self.limits if self.remaining(c) < 0]

    def utilisation(self):
        return {c: round(100.0 * self.spent[c] / self.limits[c], 1) for c in self.limits if self.limits[c]}
