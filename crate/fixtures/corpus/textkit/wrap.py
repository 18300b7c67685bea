def wrap(text, width=72):
    lines = []
    current = []
    size = 0
    for word in text.split():
        if size + len(word) + len(current) > width and current:
            lines.append(" ".join(current))
            current = []
            size = 0
        current.append(word)
        size += len(word)
    if current:
        lines.append(" ".join(current))
    return lines


def indent(lines, prefix="    "):
    return [prefix + line if line.strip() else line for line in lines]


def dedent(text):
    lines = text.splitlines()
    widths = [len(l) - len(l.lstrip()) for l in lines if l.strip()]
    margin = min(widths) if widths else 0
    return "\n".join(l[margin:] for l in lines)


def center(text, width, fill=" "):
    pad = max(0, width - len(text))
    left = pad // 2
    return fill * left + text + fill * (pad - left)
