"""Finite Heyting algebras, down-sets and the down-set algebra D(H).

Elements of an algebra are the integers ``0 .. n-1`` in declaration order;
``H.names[i]`` is the identifier used for input and output.  Subsets of an
algebra are frequently handled as bitmasks (bit ``i`` set iff element ``i``
is a member).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .errors import NoBounds, NotALattice, NotAPoset, NotHeyting, UnknownElement


_BITS: dict[int, tuple[int, ...]] = {}


def iter_bits(mask: int) -> tuple[int, ...]:
    """Indices of the set bits of ``mask``, ascending (cached)."""
    try:
        return _BITS[mask]
    except KeyError:
        pass
    out, i, m = [], 0, mask
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    if mask < 1 << 16:
        _BITS[mask] = tuple(out)
    return tuple(out)


def to_mask(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


def _transitive_closure(leq: list[list[bool]]) -> None:
    n = len(leq)
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                row_k = leq[k]
                row_i = leq[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True


class HeytingAlgebra:
    """A finite (hence complete) Heyting algebra with precomputed tables.

    Instances are immutable after construction.  Use :func:`build_algebra`
    to construct one from generating order pairs.
    """

    def __init__(self, names: Sequence[str], leq: Sequence[Sequence[bool]], label: str = "H"):
        n = len(names)
        if n == 0:
            raise ValueError("an algebra needs at least one element")
        if len(set(names)) != n:
            raise ValueError(f"duplicate element names in {list(names)}")
        self.label = label
        self.names = tuple(names)
        self.n = n
        self._index = {name: i for i, name in enumerate(self.names)}
        table = [[bool(leq[i][j]) for j in range(n)] for i in range(n)]

        for i in range(n):
            if not table[i][i]:
                raise NotAPoset(f"order is not reflexive at {names[i]}", (names[i],))
            for j in range(n):
                if table[i][j]:
                    for k in range(n):
                        if table[j][k] and not table[i][k]:
                            raise NotAPoset(
                                f"order is not transitive: {names[i]}<={names[j]}<={names[k]}",
                                (names[i], names[j], names[k]),
                            )
        for i in range(n):
            for j in range(i + 1, n):
                if table[i][j] and table[j][i]:
                    raise NotAPoset(
                        f"antisymmetry fails: {names[i]} and {names[j]} are distinct but equivalent",
                        (names[i], names[j]),
                    )
        self._leq = tuple(tuple(row) for row in table)
        self.down_mask = tuple(to_mask(j for j in range(n) if table[j][i]) for i in range(n))
        self.up_mask = tuple(to_mask(j for j in range(n) if table[i][j]) for i in range(n))
        full = (1 << n) - 1

        tops = [i for i in range(n) if self.down_mask[i] == full]
        bottoms = [i for i in range(n) if self.up_mask[i] == full]
        if not tops or not bottoms:
            missing = "top" if not tops else "bottom"
            raise NoBounds(f"the order has no {missing} element")
        self.top = tops[0]
        self.bottom = bottoms[0]

        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                m = self._greatest(self.down_mask[a] & self.down_mask[b])
                j = self._least(self.up_mask[a] & self.up_mask[b])
                if m is None or j is None:
                    which = "greatest lower bound" if m is None else "least upper bound"
                    raise NotALattice(f"{names[a]} and {names[b]} have no {which}", (names[a], names[b]))
                meet[a][b] = meet[b][a] = m
                join[a][b] = join[b][a] = j
        self._meet = tuple(tuple(r) for r in meet)
        self._join = tuple(tuple(r) for r in join)

        # x => z as the supremum of {y | y /\ x <= z}, then checked against the adjunction
        imp = [[0] * n for _ in range(n)]
        for x in range(n):
            for z in range(n):
                s = self.bottom
                for y in range(n):
                    if table[meet[y][x]][z]:
                        s = join[s][y]
                imp[x][z] = s
        for x, y, z in product(range(n), repeat=3):
            if table[meet[y][x]][z] != table[y][imp[x][z]]:
                raise NotHeyting(
                    f"implication adjunction fails for y={names[y]}, x={names[x]}, z={names[z]}",
                    (names[y], names[x], names[z]),
                )
        self._imp = tuple(tuple(r) for r in imp)
        self._sup_cache: dict[int, int] = {}
        self._max_cache: dict[int, tuple[int, ...]] = {}

    def _greatest(self, mask):
        for i in iter_bits(mask):
            if self.down_mask[i] & mask == mask:
                return i
        return None

    def _least(self, mask):
        for i in iter_bits(mask):
            if self.up_mask[i] & mask == mask:
                return i
        return None

    def __repr__(self):
        return f"<HeytingAlgebra {self.label} {' '.join(self.names)}>"

    def __len__(self):
        return self.n

    @property
    def elements(self) -> range:
        return range(self.n)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElement(f"{name!r} is not an element of {self.label}") from None

    def name(self, i: int) -> str:
        return self.names[i]

    def leq(self, a: int, b: int) -> bool:
        return self._leq[a][b]

    def meet(self, a: int, b: int) -> int:
        return self._meet[a][b]

    def join(self, a: int, b: int) -> int:
        return self._join[a][b]

    def implies(self, x: int, z: int) -> int:
        return self._imp[x][z]

    def iff(self, x: int, z: int) -> int:
        return self._meet[self._imp[x][z]][self._imp[z][x]]

    def sup(self, items: Iterable[int]) -> int:
        s = self.bottom
        for i in items:
            s = self._join[s][i]
        return s

    def inf(self, items: Iterable[int]) -> int:
        s = self.top
        for i in items:
            s = self._meet[s][i]
        return s

    def sup_mask(self, mask: int) -> int:
        try:
            return self._sup_cache[mask]
        except KeyError:
            value = self._sup_cache[mask] = self.sup(iter_bits(mask))
            return value

    def maximal(self, mask: int) -> tuple[int, ...]:
        """Maximal elements of the subset ``mask``."""
        try:
            return self._max_cache[mask]
        except KeyError:
            pass
        up = self.up_mask
        value = self._max_cache[mask] = tuple(a for a in iter_bits(mask) if up[a] & mask == 1 << a)
        return value

    def below(self, a: int) -> tuple[int, ...]:
        return tuple(iter_bits(self.down_mask[a]))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(h, k)`` where ``k`` is covered by ``h`` (Hasse edges)."""
        out = []
        for h in range(self.n):
            for k in iter_bits(self.down_mask[h]):
                if k == h:
                    continue
                between = self.down_mask[h] & self.up_mask[k]
                if between == (1 << h) | (1 << k):
                    out.append((h, k))
        return tuple(out)

    @cached_property
    def height(self) -> tuple[int, ...]:
        """Number of elements strictly below each element; a linear extension key."""
        return tuple(bin(self.down_mask[i]).count("1") - 1 for i in range(self.n))

    def leq_pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in range(self.n) if self._leq[a][b]]


def build_algebra(elements: Sequence[str], leq_pairs: Iterable[tuple[str, str]], label: str = "H") -> HeytingAlgebra:
    """Close ``leq_pairs`` reflexively and transitively and validate the result.

    Raises NotAPoset, NoBounds, NotALattice or NotHeyting (each carrying a
    ``witness``) when the closed order is not a finite Heyting algebra.
    """
    names = list(elements)
    if not names:
        raise ValueError("elements must be non-empty")
    index = {name: i for i, name in enumerate(names)}
    if len(index) != len(names):
        raise ValueError(f"duplicate element names in {names}")
    n = len(names)
    table = [[i == j for j in range(n)] for i in range(n)]
    for a, b in leq_pairs:
        for x in (a, b):
            if x not in index:
                raise UnknownElement(f"{x!r} is not a declared element")
        table[index[a]][index[b]] = True
    _transitive_closure(table)
    return HeytingAlgebra(names, table, label=label)


def bi_implication(H: HeytingAlgebra, x: int, z: int) -> int:
    return H.iff(x, z)


def implication(H: HeytingAlgebra, x: int, z: int) -> int:
    return H.implies(x, z)


@dataclass(frozen=True)
class DownSet:
    algebra: HeytingAlgebra
    members: frozenset

    def __post_init__(self):
        H = self.algebra
        for a in self.members:
            if H.down_mask[a] & ~self.mask:
                raise ValueError(f"{sorted(H.names[i] for i in self.members)} is not down-closed")

    @property
    def mask(self) -> int:
        return to_mask(self.members)

    def __contains__(self, a):
        return a in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)


def down_closure_mask(H: HeytingAlgebra, mask: int) -> int:
    out = 0
    for a in iter_bits(mask):
        out |= H.down_mask[a]
    return out


def down_closure(H: HeytingAlgebra, X: Iterable[int]) -> DownSet:
    return DownSet(H, frozenset(iter_bits(down_closure_mask(H, to_mask(X)))))


def is_down_closed_mask(H: HeytingAlgebra, mask: int) -> bool:
    return down_closure_mask(H, mask) == mask


def is_principal_mask(H: HeytingAlgebra, mask: int) -> bool:
    # the empty set is not principal: the smallest principal down-set is {bot}
    return mask != 0 and H.down_mask[H.sup_mask(mask)] == mask


def is_principal(D: DownSet) -> bool:
    return is_principal_mask(D.algebra, D.mask)


def downset_masks(H: HeytingAlgebra) -> list[int]:
    """All down-closed subsets of H, ordered by size and then by member indices."""
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for m in frontier:
            for a in range(H.n):
                if not m >> a & 1:
                    grown = m | H.down_mask[a]
                    if grown not in found:
                        found.add(grown)
                        nxt.append(grown)
        frontier = nxt
    return sorted(found, key=lambda m: (bin(m).count("1"), sorted(iter_bits(m))))


class DownsetAlgebra(HeytingAlgebra):
    """D(H): down-closed subsets of ``base`` ordered by inclusion.

    ``sets[i]`` is the bitmask (over ``base``) of the down-set that is element
    ``i`` of this algebra.
    """

    def __init__(self, base: HeytingAlgebra):
        masks = downset_masks(base)
        names = ["{" + ",".join(base.names[i] for i in iter_bits(m)) + "}" for m in masks]
        leq = [[a & ~b == 0 for b in masks] for a in masks]
        super().__init__(names, leq, label=f"D({base.label})")
        self.base = base
        self.sets = tuple(masks)
        self._of_mask = {m: i for i, m in enumerate(masks)}

    def of_mask(self, mask: int) -> int:
        return self._of_mask[mask]

    def dagger(self, h: int) -> int:
        """The element {h}-dagger (principal down-set of a base element)."""
        return self._of_mask[self.base.down_mask[h]]

    def members(self, A: int) -> tuple[int, ...]:
        return tuple(iter_bits(self.sets[A]))


_DOWNSET_CACHE: dict[int, tuple[HeytingAlgebra, DownsetAlgebra]] = {}


def downset_algebra(H: HeytingAlgebra) -> DownsetAlgebra:
    cached = _DOWNSET_CACHE.get(id(H))
    if cached is not None and cached[0] is H:
        return cached[1]
    D = DownsetAlgebra(H)
    _DOWNSET_CACHE[id(H)] = (H, D)
    return D


def adjunction_violation(H: HeytingAlgebra):
    """First triple (y, x, z) with (y /\\ x <= z) != (y <= x => z), or None."""
    for x, y, z in product(H.elements, repeat=3):
        if H.leq(H.meet(y, x), z) != H.leq(y, H.implies(x, z)):
            return (y, x, z)
    return None


def frame_law_violation(H: HeytingAlgebra):
    """First (x, S) with x /\\ sup S != sup {x /\\ s}, over every subset S; or None."""
    for mask in range(1 << H.n):
        s = H.sup_mask(mask)
        for x in H.elements:
            if H.meet(x, s) != H.sup(H.meet(x, t) for t in iter_bits(mask)):
                return (x, frozenset(iter_bits(mask)))
    return None


def sup_dagger_violation(H: HeytingAlgebra):
    """First (X, h) breaking sup X <= h  <=>  X subset of h-dagger; or None."""
    for X in downset_masks(H):
        s = H.sup_mask(X)
        for h in H.elements:
            if H.leq(s, h) != (X & ~H.down_mask[h] == 0):
                return (frozenset(iter_bits(X)), h)
    return None


def sup_dagger_adjunction(H: HeytingAlgebra) -> bool:
    return sup_dagger_violation(H) is None
