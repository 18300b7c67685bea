CODES = {"red": 31, "green": 32, "yellow": 33, "blue": 34, "bold": 1}


def colorize(text, *styles, enabled=True):
    if not enabled or not styles:
        return text
    seq = ";".join(str(CODES[s]) for s in styles)
    return "\x1b[%sm%s\x1b[0m" % (seq, text)


def supports_color(stream):
    return hasattr(stream, "isatty") and stream.isatty()


def hex_to_rgb(value):
    value = value.lstrip("#")
    if len(value) == 3:
        value = "".join(c * 2 for c in value)
    return tuple(int(value[i:i + 2], 16) for i in (0, 2, 4))


def rgb_to_hex(r, g, b):
    return "#%02x%02x%02x" % (max(0, min(255, r)), max(0, min(255, g)), max(0, min(255, b)))
