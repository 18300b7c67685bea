import shlex
import subprocess


def run(cmd, cwd=None, check=True):
    if isinstance(cmd, str):
        cmd = shlex.split(cmd)
    proc = subprocess.run(cmd, cwd=cwd, capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise RuntimeError("%s failed: %s" % (cmd[0], proc.stderr.strip()))
    return proc.stdout


def which(name, path):
    import os
    for d in path.split(os.pathsep):
        candidate = os.path.join(d, name)
        if os.path.isfile(candidate) and os.access(candidate, os.X_OK):
            return candidate
    return None


def confirm(prompt, default=False, read=input):
    suffix = " [Y/n] " if default else " [y/N] "
    answer = read(prompt + suffix).strip().lower()
    if not answer:
        return default
    return answer[0] == "y"
