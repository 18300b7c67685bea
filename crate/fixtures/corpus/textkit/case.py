def snake_to_camel(name):
    head, *rest = name.split("_")
    return head + "".join(part.title() for part in rest)


def camel_to_snake(name):
    out = []
    for i, ch in enumerate(name):
        if ch.isupper() and i > 0 and not name[i - 1].isupper():
            out.append("_")
        out.append(ch.lower())
    return "".join(out)


def title_case(text, minor=("a", "an", "the", "of", "in", "on")):
    words = text.split()
    result = [words[0].capitalize()] if words else []
    for w in words[1:]:
        result.append(w.lower() if w.lower() in minor else w.capitalize())
    return " ".join(result)


def swap_case(text):
    return "".join(c.lower() if c.isupper() else c.upper() for c in text)
