import functools
import time


def retry(times=3, delay=0.1, backoff=2.0, exceptions=(Exception,), sleep=time.sleep):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            wait = delay
            for attempt in range(times):
                try:
                    return fn(*args, **kwargs)
                except exceptions:
                    if attempt == times - 1:
                        raise
                    sleep(wait)
                    wait *= backoff
        return wrapper
    return decorate
