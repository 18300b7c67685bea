import re
import unicodedata

_NON_WORD = re.compile(r"[^\w\s-]")
_SPACES = re.compile(r"[-\s]+")


def slugify(value, allow_unicode=False):
    value = str(value)
    if allow_unicode:
        value = unicodedata.normalize("NFKC", value)
    else:
        value = unicodedata.normalize("NFKD", value).encode("ascii", "ignore").decode("ascii")
    value = _NON_WORD.sub("", value.lower())
    return _SPACES.sub("-", value).strip("-_")


def unique_slug(title, taken):
    base = slugify(title)
    slug = base
    n = 2
    while slug in taken:
        slug = "%s-%d" % (base, n)
        n += 1
    taken.add(slug)
    return slug


def shorten(slug, limit=40):
    if len(slug) <= limit:
        return slug
    cut = slug[:limit].rsplit("-", 1)[0]
    return cut or slug[:limit]
