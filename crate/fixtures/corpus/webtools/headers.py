class Headers:
    def __init__(self, items=()):
        self._items = [(k.lower(), v) for k, v in items]

    def get(self, name, default=None):
        name = name.lower()
        for k, v in reversed(self._items):
            if k == name:
                return v
        return default

    def get_all(self, name):
        return [v for k, v in self._items if k == name.lower()]

    def add(self, name, value):
        self._items.append((name.lower(), str(value)))

    def content_length(self):
        value = self.get("content-length")
        return int(value) if value and value.isdigit() else None

    def to_lines(self):
        return ["%s: %s" % ("-".join(p.capitalize() for p in k.split("-")), v) for k, v in self._items]
