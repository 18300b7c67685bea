import json
import os


DEFAULTS = {"verbose": False, "jobs": 1, "color": "auto"}


def load(path):
    if not os.path.exists(path):
        return dict(DEFAULTS)
    with open(path) as fh:
        data = json.load(fh)
    merged = dict(DEFAULTS)
    merged.update({k: v for k, v in data.items() if k in DEFAULTS})
    return merged


def from_env(prefix="APP_", environ=os.environ):
    out = {}
    for key, value in environ.items():
        if not key.startswith(prefix):
            continue
        name = key[len(prefix):].lower()
        if value.lower() in ("1", "true", "yes"):
            out[name] = True
        elif value.lower() in ("0", "false", "no"):
            out[name] = False
        elif value.isdigit():
            out[name] = int(value)
        else:
            out[name] = value
    return out


def save(path, config):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(config, fh, indent=2, sort_keys=True)
    os.replace(tmp, path)
