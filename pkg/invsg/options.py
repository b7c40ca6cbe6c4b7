import os

from openmdao.utils.options_dictionary import OptionsDictionary

from .error import InputError

CONFIG_FILENAME = 'invsg.cfg'

# name, default, type, lower bound, description
_DECLARATIONS = [
    ('max_universe_size', 16, int, 0,
     'largest index set for closures in I_n and Wagner-Preston representations'),
    ('max_closure_size', 100000, int, 1,
     'element cap for generate_closure'),
    ('max_munn_size', 10000, int, 1,
     'element cap for the Munn semigroup T_E'),
    ('max_lattice_nodes', 20000, int, 1,
     'node cap for subsemigroup lattices'),
    ('max_search_steps', 10_000_000, int, 1,
     'branch-step cap for isomorphism and lattice-isomorphism searches'),
    ('max_pa_size', 5000, int, 1,
     'element cap for PA(S) and PSA(S)'),
    ('max_catalog_order', 6, int, 0,
     'largest order accepted by the catalog command'),
    ('max_isomorphisms', 1000, int, 1,
     'default number of (lattice/PA) isomorphisms examined by the harnesses'),
    ('verbose', False, bool, None,
     'print progress messages to stderr'),
]


def declare_options(options):
    """
    Declare the invsg tunables on an OptionsDictionary.

    Parameters
    ----------
    options : :class:`~openmdao.utils.options_dictionary.OptionsDictionary`
        The dictionary to populate
    """
    for name, default, kind, lower, desc in _DECLARATIONS:
        if lower is None:
            options.declare(name, default=default, types=kind, desc=desc)
        else:
            options.declare(name, default=default, types=kind, lower=lower, desc=desc)
    return options


def declared():
    """(name, default, type, lower bound, description) for every option."""
    return list(_DECLARATIONS)


def new_options():
    return declare_options(OptionsDictionary(parent_name='invsg'))


options = new_options()


def get(name, override=None):
    """
    Return ``override`` if given, else the process-wide value of option ``name``.
    """
    return options[name] if override is None else override


def _coerce(name, text):
    kinds = {decl[0]: decl[2] for decl in _DECLARATIONS}
    kind = kinds[name]
    if kind is bool:
        lowered = text.strip().lower()
        if lowered in ('1', 'true', 'yes', 'on'):
            return True
        if lowered in ('0', 'false', 'no', 'off'):
            return False
        raise InputError(f'option {name} expects a boolean, got {text!r}')
    try:
        return kind(text.strip().replace('_', ''))
    except ValueError:
        raise InputError(f'option {name} expects {kind.__name__}, got {text!r}')


def read_config_file(path):
    """
    Parse an environment-style configuration file.

    Lines are ``KEY=VALUE``; ``#`` starts a comment; keys are option names,
    case insensitive, with an optional ``INVSG_`` prefix.

    Returns
    -------
    settings : dict
        Option name to coerced value
    """
    known = {decl[0] for decl in _DECLARATIONS}
    settings = {}
    with open(path, encoding='utf-8') as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise InputError(f'{path}:{lineno}: expected KEY=VALUE')
            key, value = line.split('=', 1)
            key = key.strip().lower()
            if key.startswith('invsg_'):
                key = key[len('invsg_'):]
            if key not in known:
                raise InputError(f'{path}:{lineno}: unknown option {key!r}')
            settings[key] = _coerce(key, value)
    return settings


def configure(overrides=None, directory=None):
    """
    Reset the process-wide options: declared defaults, then ``invsg.cfg``
    from ``directory`` (the working directory by default), then ``overrides``.
    """
    for name, default, _, _, _ in _DECLARATIONS:
        options[name] = default
    path = os.path.join(directory or os.getcwd(), CONFIG_FILENAME)
    if os.path.isfile(path):
        options.update(read_config_file(path))
    if overrides:
        options.update({k: v for k, v in overrides.items() if v is not None})
    return options
