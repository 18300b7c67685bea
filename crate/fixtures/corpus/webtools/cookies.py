def parse_cookies(header):
    jar = {}
    for item in header.split(";"):
        if "=" not in item:
            continue
        name, value = item.split("=", 1)
        jar[name.strip()] = value.strip().strip('"')
    return jar


def format_cookie(name, value, max_age=None, path="/", secure=False, http_only=True):
    parts = ["%s=%s" % (name, value), "Path=%s" % path]
    if max_age is not None:
        parts.append("Max-Age=%d" % int(max_age))
    if secure:
        parts.append("Secure")
    if http_only:
        parts.append("HttpOnly")
    return "; ".join(parts)
