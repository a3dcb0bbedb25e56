"""Deterministic random instances: lattices, presheaves, transformations and relation families.

Lattices are sublattices of small Boolean algebras, so they are always
distributive.  Presheaves come from a set of points, each alive up to some
level, with an equivalence relation per level that only gets coarser going
down; restriction sends a class to the class containing it one level lower.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from ..errors import BoundsError
from ..heyting import HeytingAlgebra, build_algebra, downset_algebra, down_closure_mask
from ..presheaf import Presheaf, Transformation, make_presheaf
from ..pretrans import Mode, PreTransformation, RelObject, compose_inf, from_entries
from ..relations import FiniteSet
from ..functors.comparison import phi

MAX_H = 6
MAX_CARRIER = 4


@dataclass(frozen=True)
class GeneratorParams:
    seed: int = 1
    max_h: int = 5
    max_carrier: int = 3
    count: int = 10

    def __post_init__(self):
        if not 1 <= self.max_h <= MAX_H:
            raise BoundsError(f"max_h must lie in 1..{MAX_H}, got {self.max_h}")
        if not 0 <= self.max_carrier <= MAX_CARRIER:
            raise BoundsError(f"max_carrier must lie in 0..{MAX_CARRIER}, got {self.max_carrier}")
        if self.count < 0:
            raise BoundsError(f"count must be non-negative, got {self.count}")


@dataclass(frozen=True, eq=False)
class Instance:
    index: int
    algebra: HeytingAlgebra
    presheaves: tuple  # a chain F0 -> F1 -> F2
    transformations: tuple  # transformations[i]: presheaves[i] -> presheaves[i + 1]

    @property
    def label(self) -> str:
        return f"g{self.index}"


def _close(masks: set, full: int) -> set:
    out = set(masks) | {0, full}
    changed = True
    while changed:
        changed = False
        for a in list(out):
            for b in list(out):
                for c in (a | b, a & b):
                    if c not in out:
                        out.add(c)
                        changed = True
    return out


def random_lattice(rng: random.Random, max_h: int, label: str = "G") -> HeytingAlgebra:
    """A random sublattice of a Boolean algebra with at most ``max_h`` elements."""
    target = rng.randint(1, max_h)
    if target == 1:
        return build_algebra(["bot"], [], label)
    bits = rng.randint(max(1, (target - 1).bit_length()), 4)
    full = (1 << bits) - 1
    masks = {0, full}
    for _ in range(40):
        if len(masks) >= target:
            break
        grown = _close(masks | {rng.randrange(1, full)}, full)
        if len(grown) <= target:
            masks = grown
    order = sorted(masks, key=lambda m: (bin(m).count("1"), m))
    names = []
    for m in order:
        names.append("bot" if m == 0 else "top" if m == full else f"e{len(names)}")
    pairs = [(names[i], names[j]) for i, a in enumerate(order) for j, b in enumerate(order) if a & ~b == 0]
    return build_algebra(names, pairs, label)


def _classes(members, relation):
    """Partition ``members`` by union-find over ``relation`` pairs; returns point -> representative."""
    parent = {s: s for s in members}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    for a, b in relation:
        if a in parent and b in parent:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return {s: find(s) for s in members}


def _presheaf_from_points(H: HeytingAlgebra, levels: dict, rep: list, label: str) -> Presheaf:
    """rep[h][s] is the representative of point s at level h."""
    carriers, res = {}, {}
    for h in H.elements:
        carriers[h] = sorted({f"s{r}" for r in rep[h].values()}, key=lambda t: int(t[1:]))
    for h in H.elements:
        for k in H.below(h):
            res[h, k] = {f"s{rep[h][s]}": f"s{rep[k][s]}" for s in rep[h]}
    return make_presheaf(H, carriers, res, label)


def _coarsen(H, points, levels, rng, base=None, merge_p=0.3):
    """Per-level representatives: coarser below, and coarser than ``base`` when given."""
    rep = [None] * H.n
    for h in sorted(H.elements, key=lambda e: -H.height[e]):
        alive = [s for s in points if H.leq(h, levels[s])]
        pairs = []
        for l in H.elements:
            if l != h and H.leq(h, l) and rep[l] is not None:
                pairs += [(s, r) for s, r in rep[l].items()]
        if base is not None:
            pairs += [(s, r) for s, r in base[h].items()]
        for a in alive:
            for b in alive:
                if a < b and rng.random() < merge_p / max(1, len(alive)):
                    pairs.append((a, b))
        rep[h] = _classes(alive, pairs)
    return rep


def _random_level(rng: random.Random, H: HeytingAlgebra) -> int:
    # favour high levels so that restrictions have something to do
    return H.top if rng.random() < 0.4 else rng.choice(H.elements)


def random_presheaf(rng: random.Random, H: HeytingAlgebra, max_carrier: int, label: str = "F") -> Presheaf:
    return random_chain(rng, H, max_carrier, 1, label)[0][0]


def random_chain(rng: random.Random, H: HeytingAlgebra, max_carrier: int, length: int = 3, label: str = "F"):
    """Presheaves F0 -> F1 -> ... with each map coarsening classes (and possibly adding points)."""
    npoints = rng.randint(min(1, max_carrier), max_carrier)
    points = list(range(npoints))
    levels = {s: _random_level(rng, H) for s in points}
    rep = _coarsen(H, points, levels, rng)
    chain = [(_presheaf_from_points(H, levels, rep, f"{label}0"), rep)]
    for i in range(1, length):
        extra = rng.randint(0, max(0, max_carrier - len(points)))
        for _ in range(extra):
            s = len(points)
            points.append(s)
            levels[s] = _random_level(rng, H)
        base = [{s: r for s, r in chain[-1][1][h].items()} for h in H.elements]
        rep = _coarsen(H, points, levels, rng, base, merge_p=0.6)
        chain.append((_presheaf_from_points(H, levels, rep, f"{label}{i}"), rep))
    presheaves = [F for F, _ in chain]
    maps = []
    for i in range(1, length):
        (F, rf), (G, rg) = chain[i - 1], chain[i]
        comps = [{f"s{rf[h][s]}": f"s{rg[h][s]}" for s in rf[h]} for h in H.elements]
        maps.append(Transformation(F, G, comps))
    return presheaves, maps


def generate(params: GeneratorParams) -> Iterator[Instance]:
    rng = random.Random(params.seed)
    for i in range(params.count):
        H = random_lattice(rng, params.max_h, f"G{i}")
        presheaves, maps = random_chain(rng, H, params.max_carrier, 3, f"g{i}.F")
        yield Instance(i, H, tuple(presheaves), tuple(maps))


def random_fiber(rng: random.Random, H: HeytingAlgebra, mode: Mode) -> int:
    if Mode(mode) is Mode.INF:
        return H.down_mask[rng.choice(H.elements)]
    picks = 0
    for h in H.elements:
        if rng.random() < 0.25:
            picks |= 1 << h
    return down_closure_mask(H, picks)


def random_pretransformation(rng: random.Random, H: HeytingAlgebra, source: FiniteSet, target: FiniteSet,
                             mode: Mode) -> PreTransformation:
    rows = [[random_fiber(rng, H, mode) for _ in source] for _ in target]
    return PreTransformation(H, source, target, rows)


def random_carrier(rng: random.Random, max_carrier: int, label: str, minimum: int = 0) -> FiniteSet:
    return FiniteSet(label, tuple(f"{label.lower()}{i}" for i in range(rng.randint(minimum, max_carrier))))


def random_inf_object(rng: random.Random, H: HeytingAlgebra, carrier: FiniteSet) -> RelObject:
    """Close a random symmetric matrix (entries below both diagonals) under composition."""
    n = len(carrier)
    diag = [rng.choice(H.elements) for _ in range(n)]
    M = [[H.bottom] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = diag[i]
        for j in range(i):
            v = H.meet(rng.choice(H.elements), H.meet(diag[i], diag[j])) if rng.random() < 0.6 else H.bottom
            M[i][j] = M[j][i] = v
    tau = from_entries(H, carrier, carrier, M)
    while True:
        sq = compose_inf(tau, tau)
        joined = from_entries(H, carrier, carrier,
                              [[H.join(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(tau.entries, sq.entries)])
        if joined == tau:
            return RelObject(tau, Mode.INF)
        tau = joined


def random_ord_object(rng: random.Random, H: HeytingAlgebra, carrier: FiniteSet) -> RelObject:
    """An order-preserving object: the image of a random infima-preserving object over D(H)."""
    D = downset_algebra(H)
    return RelObject(phi(random_inf_object(rng, D, carrier).relation), Mode.ORD)
