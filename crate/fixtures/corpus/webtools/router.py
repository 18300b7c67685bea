import re


class Route:
    def __init__(self, pattern, handler, methods=("GET",)):
        self.pattern = pattern
        self.handler = handler
        self.methods = set(m.upper() for m in methods)
        self.regex = re.compile("^" + re.sub(r"<(\w+)>", r"(?P<\1>[^/]+)", pattern) + "$")

    def match(self, method, path):
        if method.upper() not in self.methods:
            return None
        m = self.regex.match(path)
        return m.groupdict() if m else None


class Router:
    def __init__(self):
        self.routes = []

    def add(self, pattern, methods=("GET",)):
        def decorator(fn):
            self.routes.append(Route(pattern, fn, methods))
            return fn
        return decorator

    def dispatch(self, method, path):
        for route in self.routes:
            params = route.match(method, path)
            if params is not None:
                return route.handler(**params)
        return 404, "not found"
