import sys

from . import options


def status(subsystem, text):
    """
    Progress line in the ``INVSG (<subsystem>): ...`` form, printed to
    stderr when the ``verbose`` option is set. stdout is kept for data.
    """
    if options.get('verbose'):
        print(f'INVSG ({subsystem}): {text}', file=sys.stderr, flush=True)


def warn(subsystem, text):
    print(f'INVSG WARNING ({subsystem}): {text}', file=sys.stderr, flush=True)
