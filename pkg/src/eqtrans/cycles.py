"""Chord-free cycle enumeration by breadth-first growth of chord-free paths.

A path [i1, ..., ik] is grown one edge at a time.  An extension to w is

* cyclic   if w is already on the path (dropped),
* chorded  if w is adjacent to an interior vertex i2..i(k-1) (dropped),
* terminal if w is adjacent to i1 (closes a chord-free cycle),
* extensible otherwise (kept for the next level).

Paths are seeded only at the smallest vertex of the cycle they may close and
only visit larger vertices, and a closed path is reported only when its
second vertex is smaller than its last.  Each chord-free cycle therefore
appears exactly once, already in canonical form.
"""

import os

from .errors import LimitExceeded

__all__ = [
    "Cycle",
    "PathFrontier",
    "enumerate_chord_free_cycles",
    "iter_frontiers",
    "cycle_stats",
    "canonical_cycle",
    "DEFAULT_MAX_CYCLES",
    "default_max_cycles",
    "DEFAULT_MAX_PATHS",
]

DEFAULT_MAX_PATHS = 10**7
DEFAULT_MAX_CYCLES = 10**6


def default_max_cycles():
    """Cycle cap from EQTRANS_CYCLE_LIMIT, else :data:`DEFAULT_MAX_CYCLES`."""
    raw = os.environ.get("EQTRANS_CYCLE_LIMIT")
    if raw is None:
        return DEFAULT_MAX_CYCLES
    value = int(raw)
    if value <= 0:
        raise ValueError("EQTRANS_CYCLE_LIMIT must be positive")
    return value


class Cycle(tuple):
    """Vertex sequence of a simple cycle in canonical form.

    The first vertex is the minimum and the second is smaller than the last,
    so rotations and reflections of one cycle compare equal after
    :func:`canonical_cycle`.
    """

    __slots__ = ()

    def __new__(cls, vertices):
        return super().__new__(cls, vertices)

    def __repr__(self):
        return f"Cycle({list(self)})"

    @property
    def vertices(self):
        return tuple(self)

    def pairs(self):
        """Consecutive vertex pairs in traversal order, closing pair last."""
        k = len(self)
        return [(self[t], self[(t + 1) % k]) for t in range(k)]


def canonical_cycle(vertices):
    vs = list(vertices)
    k = len(vs)
    m = vs.index(min(vs))
    rot = vs[m:] + vs[:m]
    if k > 2 and rot[1] > rot[-1]:
        rot = [rot[0]] + rot[:0:-1]
    return Cycle(rot)


class PathFrontier:
    """The extensible chord-free paths with ``k`` vertices, for one seed vertex.

    Each entry is ``(path, visited_mask, interior_neighbors_mask)``.
    """

    __slots__ = ("k", "seed", "paths")

    def __init__(self, k, seed, paths):
        self.k = k
        self.seed = seed
        self.paths = paths

    def __len__(self):
        return len(self.paths)

    def vertex_paths(self):
        return [p for p, _, _ in self.paths]


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1, low
        mask ^= low


def iter_frontiers(g, on_cycle=None, max_paths=DEFAULT_MAX_PATHS):
    """Yield every :class:`PathFrontier` level, seed by seed.

    ``on_cycle`` receives each canonical closed path as a tuple.  Level 1
    (single vertices) and level 2 (single edges) are yielded too, so the
    frontiers together list every extensible chord-free path that starts at
    its minimum vertex.
    """
    adj = g.adjacency_masks()
    generated = 0
    for s in g.vertices:
        above = ~((1 << (s + 1)) - 1)
        closing = adj[s] & above
        yield PathFrontier(1, s, [((s,), 1 << s, 0)])
        level = [((s, v), (1 << s) | low, 0) for v, low in _bits(closing)]
        k = 2
        while level:
            generated += len(level)
            if generated > max_paths:
                raise LimitExceeded(f"more than {max_paths} chord-free paths", count=generated)
            yield PathFrontier(k, s, level)
            nxt = []
            for path, visited, interior in level:
                last = path[-1]
                reach = adj[last]
                for w, low in _bits(reach & above & ~visited & ~interior):
                    if low & closing:
                        if path[1] < w and on_cycle is not None:
                            on_cycle(path + (w,))
                    else:
                        nxt.append((path + (w,), visited | low, interior | reach))
            level = nxt
            k += 1


def enumerate_chord_free_cycles(g, max_cycles=None, max_paths=None):
    """All chord-free cycles of ``g``, one canonical :class:`Cycle` each.

    Sorted by length, then lexicographically.  Raises :class:`LimitExceeded`
    (with the number found so far) when either cap is crossed.
    """
    if max_cycles is None:
        max_cycles = default_max_cycles()
    if max_paths is None:
        max_paths = DEFAULT_MAX_PATHS
    found = []

    def keep(path):
        found.append(Cycle(path))
        if len(found) > max_cycles:
            raise LimitExceeded(f"more than {max_cycles} chord-free cycles", count=len(found))

    for _ in iter_frontiers(g, keep, max_paths):
        pass
    found.sort(key=lambda c: (len(c), c))
    return found


def cycle_stats(cycles):
    """(count, total length, max length); total length is the direct clause count."""
    lengths = [len(c) for c in cycles]
    return len(lengths), sum(lengths), max(lengths, default=0)
