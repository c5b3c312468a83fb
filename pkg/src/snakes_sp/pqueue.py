"""Addressable min-priority queues keyed by vertex id.

Both heaps order items by ``(key, vertex)`` so that ties go to the smaller
vertex id and every drain order is reproducible.
"""

from __future__ import annotations

from typing import Protocol, Sequence

from .graph import ContractViolation


class AddressableHeap(Protocol):
    def __len__(self) -> int: ...

    def __contains__(self, v: int) -> bool: ...

    def extract_min(self) -> tuple[int, int]: ...

    def decrease_key(self, v: int, new_key: int) -> None: ...

    def key(self, v: int) -> int: ...

    def insert(self, v: int, key: int) -> None: ...


class QuaternaryHeap:
    """Indexed 4-ary heap stored in flat lists."""

    __slots__ = ("_keys", "_verts", "_pos")

    def __init__(self, vertices: Sequence[int], d: Sequence[int]) -> None:
        size = (max(vertices) + 1) if vertices else 0
        pos = [-1] * size
        for i, v in enumerate(vertices):
            if pos[v] != -1:
                raise ContractViolation(f"vertex {v} listed twice")
            pos[v] = i
        items = sorted((d[v], v) for v in vertices)
        # a sorted array is already a valid heap
        self._keys = [k for k, _ in items]
        self._verts = [v for _, v in items]
        for i, v in enumerate(self._verts):
            pos[v] = i
        self._pos = pos

    def __len__(self) -> int:
        return len(self._verts)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < len(self._pos) and self._pos[v] >= 0

    def key(self, v: int) -> int:
        if v not in self:
            raise ContractViolation(f"vertex {v} not in heap")
        return self._keys[self._pos[v]]

    def insert(self, v: int, key: int) -> None:
        if v in self:
            raise ContractViolation(f"vertex {v} already in heap")
        if v >= len(self._pos):
            self._pos.extend([-1] * (v + 1 - len(self._pos)))
        self._keys.append(key)
        self._verts.append(v)
        self._sift_up(len(self._verts) - 1, key, v)

    def extract_min(self) -> tuple[int, int]:
        keys, verts, pos = self._keys, self._verts, self._pos
        if not verts:
            raise ContractViolation("extract_min on empty heap")
        top_key, top_v = keys[0], verts[0]
        pos[top_v] = -1
        last_key = keys.pop()
        last_v = verts.pop()
        if verts:
            self._sift_down(0, last_key, last_v)
        return top_v, top_key

    def decrease_key(self, v: int, new_key: int) -> None:
        if v not in self:
            raise ContractViolation(f"vertex {v} not in heap")
        i = self._pos[v]
        if new_key > self._keys[i]:
            raise ContractViolation(f"decrease_key would raise key of {v}")
        self._sift_up(i, new_key, v)

    def _sift_up(self, i: int, key: int, v: int) -> None:
        keys, verts, pos = self._keys, self._verts, self._pos
        while i > 0:
            p = (i - 1) >> 2
            pk = keys[p]
            if pk < key or (pk == key and verts[p] < v):
                break
            keys[i] = pk
            verts[i] = verts[p]
            pos[verts[i]] = i
            i = p
        keys[i] = key
        verts[i] = v
        pos[v] = i

    def _sift_down(self, i: int, key: int, v: int) -> None:
        keys, verts, pos = self._keys, self._verts, self._pos
        size = len(verts)
        while True:
            first = 4 * i + 1
            if first >= size:
                break
            best = first
            bk, bv = keys[first], verts[first]
            for c in range(first + 1, min(first + 4, size)):
                ck = keys[c]
                if ck < bk or (ck == bk and verts[c] < bv):
                    best, bk, bv = c, ck, verts[c]
            if bk < key or (bk == key and bv < v):
                keys[i] = bk
                verts[i] = bv
                pos[bv] = i
                i = best
            else:
                break
        keys[i] = key
        verts[i] = v
        pos[v] = i


class _Node:
    __slots__ = ("key", "v", "child", "sibling", "prev")

    def __init__(self, key: int, v: int) -> None:
        self.key = key
        self.v = v
        self.child: _Node | None = None
        self.sibling: _Node | None = None
        # parent if leftmost child, else left sibling
        self.prev: _Node | None = None


def _less(a: _Node, b: _Node) -> bool:
    return a.key < b.key or (a.key == b.key and a.v < b.v)


def _link(a: _Node, b: _Node) -> _Node:
    if _less(b, a):
        a, b = b, a
    b.prev = a
    b.sibling = a.child
    if a.child is not None:
        a.child.prev = b
    a.child = b
    a.sibling = None
    a.prev = None
    return a


class PairingHeap:
    """Pairing heap with two-pass merging; amortized sub-logarithmic decrease-key."""

    __slots__ = ("_root", "_nodes", "_size")

    def __init__(self, vertices: Sequence[int], d: Sequence[int]) -> None:
        self._nodes: dict[int, _Node] = {}
        self._root: _Node | None = None
        self._size = 0
        for v in vertices:
            if v in self._nodes:
                raise ContractViolation(f"vertex {v} listed twice")
            node = _Node(d[v], v)
            self._nodes[v] = node
            self._root = node if self._root is None else _link(self._root, node)
            self._size += 1

    def __len__(self) -> int:
        return self._size

    def __contains__(self, v: int) -> bool:
        return v in self._nodes

    def key(self, v: int) -> int:
        if v not in self._nodes:
            raise ContractViolation(f"vertex {v} not in heap")
        return self._nodes[v].key

    def insert(self, v: int, key: int) -> None:
        if v in self._nodes:
            raise ContractViolation(f"vertex {v} already in heap")
        node = _Node(key, v)
        self._nodes[v] = node
        self._root = node if self._root is None else _link(self._root, node)
        self._size += 1

    def extract_min(self) -> tuple[int, int]:
        root = self._root
        if root is None:
            raise ContractViolation("extract_min on empty heap")
        del self._nodes[root.v]
        self._size -= 1
        self._root = self._merge_pairs(root.child)
        return root.v, root.key

    def decrease_key(self, v: int, new_key: int) -> None:
        node = self._nodes.get(v)
        if node is None:
            raise ContractViolation(f"vertex {v} not in heap")
        if new_key > node.key:
            raise ContractViolation(f"decrease_key would raise key of {v}")
        node.key = new_key
        if node is self._root:
            return
        # detach the subtree rooted at node, then relink with the root
        prev = node.prev
        assert prev is not None
        if prev.child is node:
            prev.child = node.sibling
        else:
            prev.sibling = node.sibling
        if node.sibling is not None:
            node.sibling.prev = prev
        node.sibling = None
        node.prev = None
        assert self._root is not None
        self._root = _link(self._root, node)

    @staticmethod
    def _merge_pairs(first: _Node | None) -> _Node | None:
        if first is None:
            return None
        pairs: list[_Node] = []
        node: _Node | None = first
        while node is not None:
            a = node
            b = a.sibling
            if b is None:
                a.prev = a.sibling = None
                pairs.append(a)
                break
            node = b.sibling
            a.prev = a.sibling = None
            b.prev = b.sibling = None
            pairs.append(_link(a, b))
        result = pairs.pop()
        while pairs:
            result = _link(pairs.pop(), result)
        return result


HEAPS = {"binary": QuaternaryHeap, "pairing": PairingHeap}


def build(vertices: Sequence[int], d: Sequence[int], kind: str = "binary") -> AddressableHeap:
    """Create a heap holding ``vertices`` keyed by ``d[v]``."""
    try:
        cls = HEAPS[kind]
    except KeyError:
        raise ContractViolation(f"unknown heap kind {kind!r}") from None
    return cls(vertices, d)
