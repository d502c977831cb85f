"""Persistent order-statistic search tree over integer keys.

A path-copying treap: every update allocates O(log size) fresh nodes and
returns a new root, so any root ever obtained stays valid and unchanged
(snapshots are free).  Priorities are a fixed integer hash of the key,
which keeps the structure deterministic while giving the usual expected
O(log size) bounds.  Each node can carry an opaque payload; callers define
its meaning (the sparse solver stores backlink record ids there).

The empty tree is ``None``.  All operations are module-level functions
taking a root and returning values and/or a new root.
"""

from __future__ import annotations

from typing import Any, Iterator


class Node:
    __slots__ = ("key", "prio", "size", "left", "right", "payload")

    def __init__(self, key, prio, left, right, payload):
        self.key = key
        self.prio = prio
        self.left = left
        self.right = right
        self.payload = payload
        self.size = 1 + size(left) + size(right)


def _priority(key: int) -> int:
    # splitmix64-style mix; fixed per key so equal contents imply equal shape
    z = (key + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


def size(t: Node | None) -> int:
    return t.size if t is not None else 0


def _split(t: Node | None, key: int):
    """Three-way split into (< key, node with key or None, > key)."""
    if t is None:
        return None, None, None
    if key < t.key:
        l, mid, r = _split(t.left, key)
        return l, mid, Node(t.key, t.prio, r, t.right, t.payload)
    if key > t.key:
        l, mid, r = _split(t.right, key)
        return Node(t.key, t.prio, t.left, l, t.payload), mid, r
    return t.left, t, t.right


def _merge(l: Node | None, r: Node | None):
    if l is None:
        return r
    if r is None:
        return l
    if l.prio >= r.prio:
        return Node(l.key, l.prio, l.left, _merge(l.right, r), l.payload)
    return Node(r.key, r.prio, _merge(l, r.left), r.right, r.payload)


def insert(t: Node | None, key: int, payload: Any = None) -> Node:
    """New version with ``key`` added; rejects duplicates."""
    l, mid, r = _split(t, key)
    if mid is not None:
        raise KeyError(f"duplicate key {key}")
    node = Node(key, _priority(key), None, None, payload)
    return _merge(_merge(l, node), r)


def delete(t: Node | None, key: int) -> Node | None:
    """New version with ``key`` removed; rejects missing keys."""
    l, mid, r = _split(t, key)
    if mid is None:
        raise KeyError(f"missing key {key}")
    return _merge(l, r)


def pred(t: Node | None, x: int) -> int | None:
    """Largest key strictly below x, or None."""
    best = None
    while t is not None:
        if t.key < x:
            best = t.key
            t = t.right
        else:
            t = t.left
    return best


def rank(t: Node | None, key: int) -> int:
    """0-based index of ``key`` in sorted order; rejects missing keys."""
    r = 0
    while t is not None:
        if key < t.key:
            t = t.left
        elif key > t.key:
            r += size(t.left) + 1
            t = t.right
        else:
            return r + size(t.left)
    raise KeyError(f"missing key {key}")


def select(t: Node | None, h: int) -> int:
    """Key at 0-based index h; inverse of rank."""
    if not 0 <= h < size(t):
        raise IndexError(f"index {h} out of range for size {size(t)}")
    while True:
        ls = size(t.left)
        if h < ls:
            t = t.left
        elif h == ls:
            return t.key
        else:
            h -= ls + 1
            t = t.right


def payload_of(t: Node | None, key: int) -> Any:
    """Payload stored with ``key``; rejects missing keys."""
    while t is not None:
        if key < t.key:
            t = t.left
        elif key > t.key:
            t = t.right
        else:
            return t.payload
    raise KeyError(f"missing key {key}")


def keys(t: Node | None) -> list[int]:
    """All keys in ascending order."""
    out: list[int] = []
    stack: list[Node] = []
    while t is not None or stack:
        while t is not None:
            stack.append(t)
            t = t.left
        t = stack.pop()
        out.append(t.key)
        t = t.right
    return out


def iter_nodes(t: Node | None) -> Iterator[Node]:
    """In-order node traversal (for structural checks in tests)."""
    stack: list[Node] = []
    while t is not None or stack:
        while t is not None:
            stack.append(t)
            t = t.left
        t = stack.pop()
        yield t
        t = t.right
