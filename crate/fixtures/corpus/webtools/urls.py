from urllib.parse import quote, unquote


def parse_query(qs):
    params = {}
    for pair in qs.lstrip("?").split("&"):
        if not pair:
            continue
        key, _, value = pair.partition("=")
        params.setdefault(unquote(key), []).append(unquote(value.replace("+", " ")))
    return params


def build_query(params):
    parts = []
    for key in sorted(params):
        values = params[key] if isinstance(params[key], list) else [params[key]]
        for v in values:
            parts.append("%s=%s" % (quote(str(key)), quote(str(v))))
    return "&".join(parts)


def split_url(url):
    scheme, _, rest = url.partition("://")
    host, _, path = rest.partition("/")
    path, _, query = path.partition("?")
    return scheme.lower(), host.lower(), "/" + path, query


def join_path(*parts):
    cleaned = [p.strip("/") for p in parts if p]
    return "/" + "/".join(c for c in cleaned if c)


def normalize(url):
    scheme, host, path, query = split_url(url)
    if host.endswith(":80") and scheme == "http":
        host = host[:-3]
    segments = []
    for seg in path.split("/"):
        if seg == "..":
            if segments:
                segments.pop()
        elif seg and seg != ".":
            segments.append(seg)
    return "%s://%s/%s%s" % (scheme, host, "/".join(segments), "?" + query if query else "")
