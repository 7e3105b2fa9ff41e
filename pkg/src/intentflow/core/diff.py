"""Word-token diff with a minimal edit script under an LCS objective.

Tokens are runs of non-whitespace (punctuation stays attached to its word) and
runs of whitespace, so token sequences partition the input texts exactly and
the diff view reconstructs either side verbatim. stdlib difflib is not used
because SequenceMatcher does not guarantee LCS-minimal scripts.
"""

from __future__ import annotations

import re

from intentflow.core.types import DiffSegment, DiffView, OutputDocument

_TOKEN_RE = re.compile(r"\s+|\S+")

EQUAL = "equal"
INSERTED = "inserted"
DELETED = "deleted"


def tokenize(text: str) -> list[str]:
    """Split into whitespace/non-whitespace runs; concatenation restores the text."""
    return _TOKEN_RE.findall(text)


def diff_tokens(old: list[str], new: list[str]) -> list[tuple[str, str]]:
    """Minimal (op, token) edit script; ops are equal/deleted/inserted.

    Deterministic: within a change block deletions precede insertions, and DP
    ties are broken toward deletion.
    """
    # Trim common prefix/suffix before the quadratic part.
    lo = 0
    hi_old, hi_new = len(old), len(new)
    while lo < hi_old and lo < hi_new and old[lo] == new[lo]:
        lo += 1
    while hi_old > lo and hi_new > lo and old[hi_old - 1] == new[hi_new - 1]:
        hi_old -= 1
        hi_new -= 1

    ops: list[tuple[str, str]] = [(EQUAL, tok) for tok in old[:lo]]
    ops.extend(_diff_middle(old[lo:hi_old], new[lo:hi_new]))
    ops.extend((EQUAL, tok) for tok in old[hi_old:])
    return ops


def _diff_middle(old: list[str], new: list[str]) -> list[tuple[str, str]]:
    if not old:
        return [(INSERTED, tok) for tok in new]
    if not new:
        return [(DELETED, tok) for tok in old]

    n, m = len(old), len(new)
    # lcs[i][j] = LCS length of old[i:], new[j:]
    width = m + 1
    table = [0] * ((n + 1) * width)
    for i in range(n - 1, -1, -1):
        row = i * width
        below = row + width
        old_i = old[i]
        for j in range(m - 1, -1, -1):
            if old_i == new[j]:
                table[row + j] = table[below + j + 1] + 1
            else:
                down = table[below + j]
                right = table[row + j + 1]
                table[row + j] = down if down >= right else right

    ops: list[tuple[str, str]] = []
    i = j = 0
    while i < n and j < m:
        if old[i] == new[j]:
            ops.append((EQUAL, old[i]))
            i += 1
            j += 1
        elif table[(i + 1) * width + j] >= table[i * width + j + 1]:
            ops.append((DELETED, old[i]))
            i += 1
        else:
            ops.append((INSERTED, new[j]))
            j += 1
    ops.extend((DELETED, tok) for tok in old[i:])
    ops.extend((INSERTED, tok) for tok in new[j:])
    return _normalize(ops)


def _normalize(ops: list[tuple[str, str]]) -> list[tuple[str, str]]:
    """Reorder each contiguous change block so deletions precede insertions."""
    result: list[tuple[str, str]] = []
    block_del: list[tuple[str, str]] = []
    block_ins: list[tuple[str, str]] = []
    for op in ops:
        if op[0] == EQUAL:
            result.extend(block_del)
            result.extend(block_ins)
            block_del, block_ins = [], []
            result.append(op)
        elif op[0] == DELETED:
            block_del.append(op)
        else:
            block_ins.append(op)
    result.extend(block_del)
    result.extend(block_ins)
    return result


def edit_cost(ops: list[tuple[str, str]]) -> int:
    """Number of non-equal tokens in the script."""
    return sum(1 for kind, _ in ops if kind != EQUAL)


def diff_texts(old_text: str, new_text: str) -> DiffView:
    ops = diff_tokens(tokenize(old_text), tokenize(new_text))
    segments: list[DiffSegment] = []
    for kind, token in ops:
        if segments and segments[-1].kind == kind:
            segments[-1].text += token
        else:
            segments.append(DiffSegment(kind=kind, text=token))
    return DiffView(segments=segments)


def compute_diff(old: OutputDocument, new: OutputDocument) -> DiffView:
    """Diff two documents over their canonical texts."""
    return diff_texts(old.canonical_text, new.canonical_text)
