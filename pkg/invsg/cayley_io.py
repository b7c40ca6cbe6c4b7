"""
Readers and writers for the two text formats.

``.sgp`` (Cayley file)::

    n
    <n rows of n indices, row i holds the products i·j>
    inv: <n indices>          (optional)
    # label i: <text>         (optional, any number)

``.slt`` (semilattice file)::

    n
    labels: <n names>         (optional)
    meet:
    <n rows of n indices>

or, instead of ``meet:``, ``hasse:`` followed by cover lines ``i < j``
(``i`` and ``j`` are indices or labels).

A path of ``-`` reads standard input.
"""
import re
import sys
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .error import InputError

_LABEL = re.compile(r'#\s*label\s+(\d+)\s*:\s*(.*)$')


@dataclass
class CayleyData:
    order: int
    table: List[List[int]]
    inv: Optional[List[int]] = None
    labels: Optional[List[str]] = None


@dataclass
class SemilatticeData:
    order: int
    meet: Optional[List[List[int]]] = None
    covers: Optional[List[Tuple[int, int]]] = None
    labels: Optional[List[str]] = None


def read_text(path):
    if path == '-':
        return sys.stdin.read()
    try:
        with open(path, encoding='utf-8') as f:
            return f.read()
    except OSError as err:
        raise InputError(f'cannot read {path}: {err.strerror}')


def _int(token, where):
    try:
        return int(token)
    except ValueError:
        raise InputError(f'{where}: expected an integer, got {token!r}')


def _content_lines(text):
    """(line number, text) for non-blank lines with comments stripped."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if line:
            lines.append((lineno, line))
    return lines


def _read_order(lines, source):
    if not lines:
        raise InputError(f'{source}: empty file')
    lineno, line = lines[0]
    order = _int(line, f'{source}:{lineno}')
    if order < 0:
        raise InputError(f'{source}:{lineno}: negative order')
    return order


def _read_rows(lines, start, order, source):
    rows = []
    for lineno, line in lines[start:start + order]:
        row = [_int(t, f'{source}:{lineno}') for t in line.split()]
        if len(row) != order:
            raise InputError(f'{source}:{lineno}: expected {order} entries, got {len(row)}')
        rows.append(row)
    if len(rows) != order:
        raise InputError(f'{source}: expected {order} table rows, got {len(rows)}')
    return rows


def parse_sgp(text, source='<sgp>'):
    """
    Parse Cayley-file text into :class:`CayleyData` (no axiom checks).
    """
    labels = {}
    for raw in text.splitlines():
        match = _LABEL.match(raw.strip())
        if match:
            labels[int(match.group(1))] = match.group(2).strip()
    lines = _content_lines(text)
    order = _read_order(lines, source)
    table = _read_rows(lines, 1, order, source)
    rest = lines[1 + order:]
    inv = None
    if rest:
        lineno, line = rest[0]
        if not line.startswith('inv:'):
            raise InputError(f'{source}:{lineno}: unexpected content {line!r}')
        tokens = line[len('inv:'):].split()
        for lineno, line in rest[1:]:
            tokens.extend(line.split())
        inv = [_int(t, f'{source}: inv') for t in tokens]
        if len(inv) != order:
            raise InputError(f'{source}: inv lists {len(inv)} entries, expected {order}')
    label_list = None
    if labels:
        label_list = [labels.get(i, str(i)) for i in range(order)]
    return CayleyData(order, table, inv, label_list)


def parse_slt(text, source='<slt>'):
    """
    Parse semilattice-file text into :class:`SemilatticeData`.
    """
    lines = _content_lines(text)
    order = _read_order(lines, source)
    position = 1
    labels = None
    if position < len(lines) and lines[position][1].startswith('labels:'):
        labels = lines[position][1][len('labels:'):].split()
        if len(labels) != order:
            raise InputError(f'{source}:{lines[position][0]}: expected {order} labels')
        position += 1
    if position >= len(lines):
        if order == 0:
            return SemilatticeData(0, meet=[], labels=labels)
        raise InputError(f'{source}: missing meet: or hasse: section')
    lineno, header = lines[position]
    if header == 'meet:':
        meet = _read_rows(lines, position + 1, order, source)
        if len(lines) > position + 1 + order:
            lineno, line = lines[position + 1 + order]
            raise InputError(f'{source}:{lineno}: unexpected content {line!r}')
        return SemilatticeData(order, meet=meet, labels=labels)
    if header == 'hasse:':
        names = {name: i for i, name in enumerate(labels or [])}
        covers = []
        for lineno, line in lines[position + 1:]:
            parts = [p.strip() for p in line.split('<')]
            if len(parts) != 2:
                raise InputError(f'{source}:{lineno}: expected a cover "i < j"')
            ends = []
            for token in parts:
                if token in names:
                    ends.append(names[token])
                else:
                    ends.append(_int(token, f'{source}:{lineno}'))
            covers.append(tuple(ends))
        return SemilatticeData(order, covers=covers, labels=labels)
    raise InputError(f'{source}:{lineno}: expected meet: or hasse:, got {header!r}')


def read_sgp(path):
    return parse_sgp(read_text(path), path)


def read_slt(path):
    return parse_slt(read_text(path), path)


def sniff(text):
    """'slt' when the text has a meet:/hasse: section, otherwise 'sgp'."""
    for _, line in _content_lines(text):
        if line in ('meet:', 'hasse:') or line.startswith('labels:'):
            return 'slt'
    return 'sgp'


def format_sgp(S, labels=True):
    """
    Canonical Cayley-file text for a semigroup (with ``inv:`` for inverse ones).
    """
    out = [str(S.order)]
    for x in range(S.order):
        out.append(' '.join(str(int(v)) for v in S.table[x]))
    inv = getattr(S, 'inv', None)
    if inv is not None and S.order:
        out.append('inv: ' + ' '.join(str(int(v)) for v in inv))
    if labels and S.labels is not None:
        for x in range(S.order):
            out.append(f'# label {x}: {S.labels[x]}')
    return '\n'.join(out) + '\n'


def format_slt(E):
    out = [str(E.order)]
    if E.labels is not None:
        out.append('labels: ' + ' '.join(str(label) for label in E.labels))
    out.append('meet:')
    for e in range(E.order):
        out.append(' '.join(str(int(v)) for v in E.meet[e]))
    return '\n'.join(out) + '\n'


def write_text(path, text):
    if path == '-':
        sys.stdout.write(text)
        return
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
