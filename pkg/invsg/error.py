def _boxed(header, message):
    """
    Format the error message in a box to make it clear this
    was an explicitly raised exception.
    """
    msg = '\n+' + '-'*78 + '+' + '\n' + f'| {header}: '
    i = len(header) + 3
    for word in message.split():
        if len(word) + i + 1 > 78: # Finish line and start new one
            msg += ' '*(78-i) + '|\n| ' + word + ' '
            i = 1 + len(word) + 1
        else:
            msg += word + ' '
            i += len(word) + 1
    msg += ' '*max(78-i, 0) + '|\n' + '+' + '-'*78 + '+' + '\n'
    return msg


class InvsgError(Exception):
    """
    Base class of every error raised explicitly by invsg.

    Parameters
    ----------
    message : str
        Human readable description of the failure
    witness : tuple or dict or None
        JSON-serialisable data that exhibits the failure (e.g. a triple
        of element indices violating associativity)
    """
    header = 'INVSG Error'
    exit_code = 1

    def __init__(self, message, witness=None):
        self.message = message
        self.witness = witness
        text = message if witness is None else f'{message} (witness: {witness})'
        super().__init__(_boxed(self.header, text))

    def to_json(self):
        return {'error': type(self).__name__,
                'message': self.message,
                'witness': jsonable(self.witness)}


class InputError(InvsgError):
    """Malformed input: bad file, entries out of range, size mismatch."""
    header = 'INVSG Input Error'


class AxiomError(InputError):
    """A table fails one of the semigroup / semilattice axioms."""
    header = 'INVSG Axiom Error'


class PreconditionError(InputError):
    """An operation was called outside its stated precondition."""
    header = 'INVSG Precondition Error'


class TheoryViolation(InvsgError):
    """A computed object contradicts a published result."""
    header = 'INVSG Theory Violation'
    exit_code = 2


class InvariantFailure(InvsgError):
    """An internal consistency check failed."""
    header = 'INVSG Invariant Failure'
    exit_code = 2


class CapExceededError(InvsgError):
    """A configured resource cap was exceeded; no verdict can be given."""
    header = 'INVSG Cap Exceeded'
    exit_code = 3


def jsonable(value):
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in items]
    if hasattr(value, 'tolist'):
        return value.tolist()
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return str(value)
