import os

TYPES = {
    ".html": "text/html",
    ".css": "text/css",
    ".js": "application/javascript",
    ".json": "application/json",
    ".png": "image/png",
    ".jpg": "image/jpeg",
    ".svg": "image/svg+xml",
}


def guess_type(filename, default="application/octet-stream"):
    ext = os.path.splitext(filename)[1].lower()
    return TYPES.get(ext, default)


def is_text(mime):
    return mime.startswith("text/") or mime.endswith("json") or mime.endswith("javascript")


def accept_best(header, offered):
    prefs = []
    for part in header.split(","):
        kind, _, q = part.strip().partition(";q=")
        prefs.append((float(q) if q else 1.0, kind.strip()))
    for q, kind in sorted(prefs, reverse=True):
        if kind in offered:
            return kind
        if kind == "*/*" and offered:
            return offered[0]
    return None
