"""Total ordering over node identifiers.

Integers sort numerically and before strings; strings sort naturally, so
``"o2" < "o10"``.  Every tie-break in the package goes through
:func:`id_key` so that outputs are reproducible.
"""
import re

_DIGITS = re.compile(r"(\d+)")


def id_key(node):
    if isinstance(node, int) and not isinstance(node, bool):
        return (0, node)
    text = str(node)
    parts = _DIGITS.split(text)
    return (1, tuple(int(p) if i % 2 else p for i, p in enumerate(parts)), text)


def sorted_ids(nodes):
    return sorted(nodes, key=id_key)
