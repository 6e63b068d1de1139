try:
    from ._fucikhom import *  # noqa: F401,F403
    from ._fucikhom import __doc__  # noqa: F401
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _fucikhom import *  # noqa: F401,F403
    from _fucikhom import __doc__  # noqa: F401
