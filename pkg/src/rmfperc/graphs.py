"""The five oriented acyclic graph families, exposed as leveled DAGs.

Every family presents the same surface: per-level vertex enumeration,
predecessor/successor maps, and a canonical 64-bit word encoding of each
vertex key used to seed per-vertex randomness.  Finite families (the
hypercube and the n-ary tree) also expose sinks; infinite ones (the
regular tree and both oriented planar lattices) are streamed level by
level and never materialized.

Vertex keys by family:

* hypercube: an ``n``-bit mask; the level is the popcount.
* n-ary / regular tree: a tuple of child indices (the root is ``()``).
* square lattice ``l2``: ``(x, y)`` with ``x, y >= 0``; level ``x + y``.
* alternative lattice ``l2alt``: ``(x, y)`` with ``|x| <= y``; level ``y``.
  Within a level, vertices are enumerated with x running from -y to y.
"""

from __future__ import annotations

import itertools
import re

from .errors import ParameterError

_WORD_MASK = (1 << 64) - 1


class LeveledDag:
    family = "base"
    finite = False

    def params(self) -> dict:
        return {}

    def label(self) -> str:
        raise NotImplementedError

    def source(self):
        raise NotImplementedError

    def num_levels(self):
        """Number of levels for finite families (levels 0..num_levels), else None."""
        return None

    def level_of(self, key) -> int:
        raise NotImplementedError

    def level_width(self, level: int) -> int:
        raise NotImplementedError

    def level_vertices(self, level: int):
        raise NotImplementedError

    def predecessors(self, key):
        raise NotImplementedError

    def successors(self, key):
        raise NotImplementedError

    def is_sink(self, key) -> bool:
        return False

    def key_words(self, key):
        """Canonical encoding of a key as 64-bit words for hashing."""
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.label()}>"


class Hypercube(LeveledDag):
    """Oriented n-dimensional hypercube: source all-zeros, sink all-ones."""

    family = "hypercube"
    finite = True

    def __init__(self, n: int):
        if not (1 <= n <= 30):
            raise ParameterError(f"hypercube dimension must be in 1..30, got {n}")
        self.n = n
        self._sink = (1 << n) - 1

    def params(self):
        return {"n": self.n}

    def label(self):
        return f"hypercube:n={self.n}"

    def source(self):
        return 0

    def num_levels(self):
        return self.n

    def level_of(self, key):
        return int(key).bit_count()

    def level_width(self, level):
        from math import comb

        return comb(self.n, level)

    def level_vertices(self, level):
        for bits in itertools.combinations(range(self.n), level):
            mask = 0
            for b in bits:
                mask |= 1 << b
            yield mask

    def predecessors(self, key):
        return tuple(key ^ (1 << b) for b in range(self.n) if key >> b & 1)

    def successors(self, key):
        return tuple(key | (1 << b) for b in range(self.n) if not key >> b & 1)

    def is_sink(self, key):
        return key == self._sink

    def key_words(self, key):
        return (key,)


class NaryTree(LeveledDag):
    """Complete n-ary tree of height h; sinks are the n**h leaves."""

    family = "nary"
    finite = True

    def __init__(self, n: int, h: int):
        if n < 1 or h < 1:
            raise ParameterError(f"n-ary tree needs n >= 1 and h >= 1, got n={n}, h={h}")
        if n**h > 10**8:
            raise ParameterError(f"n-ary tree with n**h = {n**h} exceeds the size guard 1e8")
        self.n = n
        self.h = h

    def params(self):
        return {"n": self.n, "h": self.h}

    def label(self):
        return f"nary:n={self.n},h={self.h}"

    def source(self):
        return ()

    def num_levels(self):
        return self.h

    def level_of(self, key):
        return len(key)

    def level_width(self, level):
        return self.n**level

    def level_vertices(self, level):
        return itertools.product(range(self.n), repeat=level)

    def predecessors(self, key):
        return () if not key else (key[:-1],)

    def successors(self, key):
        if len(key) >= self.h:
            return ()
        return tuple(key + (i,) for i in range(self.n))

    def is_sink(self, key):
        return len(key) == self.h

    def key_words(self, key):
        return key


class RegularTree(LeveledDag):
    """Infinite tree where every vertex has d children."""

    family = "rtree"

    def __init__(self, d: int):
        if d < 1:
            raise ParameterError(f"regular tree needs d >= 1, got {d}")
        self.d = d

    def params(self):
        return {"d": self.d}

    def label(self):
        return f"rtree:d={self.d}"

    def source(self):
        return ()

    def level_of(self, key):
        return len(key)

    def level_width(self, level):
        return self.d**level

    def level_vertices(self, level):
        return itertools.product(range(self.d), repeat=level)

    def predecessors(self, key):
        return () if not key else (key[:-1],)

    def successors(self, key):
        return tuple(key + (i,) for i in range(self.d))

    def key_words(self, key):
        return key


class SquareLattice(LeveledDag):
    """First-quadrant square lattice oriented in the +x and +y directions."""

    family = "l2"

    def label(self):
        return "l2"

    def source(self):
        return (0, 0)

    def level_of(self, key):
        return key[0] + key[1]

    def level_width(self, level):
        return level + 1

    def level_vertices(self, level):
        return ((x, level - x) for x in range(level + 1))

    def predecessors(self, key):
        x, y = key
        out = []
        if x > 0:
            out.append((x - 1, y))
        if y > 0:
            out.append((x, y - 1))
        return tuple(out)

    def successors(self, key):
        x, y = key
        return ((x + 1, y), (x, y + 1))

    def key_words(self, key):
        return (key[0] & _WORD_MASK, key[1] & _WORD_MASK)


class AltLattice(LeveledDag):
    """Lattice on ``|x| <= y`` with edges (x, y) -> (x', y+1), ``|x - x'| <= 1``."""

    family = "l2alt"

    def label(self):
        return "l2alt"

    def source(self):
        return (0, 0)

    def level_of(self, key):
        return key[1]

    def level_width(self, level):
        return 2 * level + 1

    def level_vertices(self, level):
        return ((x, level) for x in range(-level, level + 1))

    def predecessors(self, key):
        x, y = key
        return tuple(
            (xp, y - 1) for xp in (x - 1, x, x + 1) if y >= 1 and abs(xp) <= y - 1
        )

    def successors(self, key):
        x, y = key
        return tuple((xp, y + 1) for xp in (x - 1, x, x + 1))

    def key_words(self, key):
        return (key[0] & _WORD_MASK, key[1] & _WORD_MASK)


def hypercube(n: int) -> Hypercube:
    return Hypercube(n)


def nary_tree(n: int, h: int) -> NaryTree:
    return NaryTree(n, h)


def regular_tree(d: int) -> RegularTree:
    return RegularTree(d)


def l2() -> SquareLattice:
    return SquareLattice()


def l2_alt() -> AltLattice:
    return AltLattice()


def parse_family(text: str) -> LeveledDag:
    """Parse a family literal: ``hypercube:n=10``, ``nary:n=3,h=8``,
    ``rtree:d=2``, ``l2``, ``l2alt``."""
    name, _, rest = text.strip().partition(":")
    name = name.lower()
    kv = {}
    if rest:
        for part in rest.split(","):
            m = re.fullmatch(r"\s*(\w+)\s*=\s*(-?\d+)\s*", part)
            if not m:
                raise ParameterError(f"cannot parse family parameter {part!r} in {text!r}")
            kv[m.group(1)] = int(m.group(2))
    try:
        if name == "hypercube":
            return Hypercube(kv.pop("n"))
        if name == "nary":
            return NaryTree(kv.pop("n"), kv.pop("h"))
        if name == "rtree":
            return RegularTree(kv.pop("d"))
        if name == "l2":
            return SquareLattice()
        if name == "l2alt":
            return AltLattice()
    except KeyError as exc:
        raise ParameterError(f"family {name!r} is missing parameter {exc}") from exc
    raise ParameterError(f"unknown graph family {name!r}")
