import re

FIELD = re.compile(r"\{\{\s*(\w+)\s*\}\}")


class Template:
    def __init__(self, source):
        self.source = source
        self.fields = FIELD.findall(source)

    def render(self, **values):
        missing = [f for f in self.fields if f not in values]
        if missing:
            raise KeyError(", ".join(sorted(set(missing))))
        return FIELD.sub(lambda m: str(values[m.group(1)]), self.source)

    def __repr__(self):
        return "Template(%r)" % (self.source[:20],)


def render_all(template, rows):
    t = Template(template)
    return [t.render(**row) for row in rows]
