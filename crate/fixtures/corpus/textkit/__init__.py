from .slug import slugify
from .case import snake_to_camel, camel_to_snake
from .wrap import wrap

__all__ = ["slugify", "snake_to_camel", "camel_to_snake", "wrap"]
__version__ = "0.3.1"
