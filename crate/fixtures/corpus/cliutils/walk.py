import fnmatch
import os


def find(root, pattern="*", skip_hidden=True):
    for dirpath, dirnames, filenames in os.walk(root):
        if skip_hidden:
            dirnames[:] = [d for d in dirnames if not d.startswith(".")]
        for name in sorted(filenames):
            if fnmatch.fnmatch(name, pattern):
                yield os.path.join(dirpath, name)


def total_size(paths):
    return sum(os.path.getsize(p) for p in paths)


def human_size(n):
    for unit in ("B", "K", "M", "G"):
        if n < 1024:
            return "%d%s" % (n, unit)
        n //= 1024
    return "%dT" % n


def newest(paths, k=5):
    return sorted(paths, key=os.path.getmtime, reverse=True)[:k]
