REASONS = {
    200: "OK",
    201: "Created",
    204: "No Content",
    301: "Moved Permanently",
    304: "Not Modified",
    400: "Bad Request",
    401: "Unauthorized",
    403: "Forbidden",
    404: "Not Found",
    500: "Internal Server Error",
}


def reason(code):
    return REASONS.get(code, "Unknown")


def is_error(code):
    return code >= 400


def category(code):
    return ["info", "success", "redirect", "client", "server"][code // 100 - 1]


def status_line(code, version="HTTP/1.1"):
    return "%s %d %s" % (version, code, reason(code))
