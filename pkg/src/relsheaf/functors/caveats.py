"""Randomized searches for the two mode-change failures one might expect.

Passing from an order-preserving idempotent to its infima-completion, or
reading an infima-preserving object as an order-preserving family, could in
principle break idempotency.  These searches look for concrete instances.
Both come back empty on symmetric inputs: over a finite distributive lattice
the completion preserves composites, and a symmetric infima-preserving
idempotent has every entry below the diagonal, which makes the levelwise
composite agree with the matrix composite.  The non-symmetric search shows
the second failure is real once symmetry is dropped.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..heyting import HeytingAlgebra, downset_algebra
from ..pretrans import PreTransformation, compose_inf, compose_ord, from_entries, inf_completion
from ..relations import FiniteSet
from ..harness.generate import random_carrier, random_inf_object, random_lattice
from .comparison import phi


@dataclass(frozen=True)
class SearchResult:
    found: PreTransformation | None
    trials: int
    seed: int

    def describe(self) -> str:
        if self.found is None:
            return f"no instance among {self.trials} random trials (seed {self.seed})"
        return repr(self.found)


def random_inf_idempotent(rng: random.Random, H: HeytingAlgebra, carrier: FiniteSet,
                          symmetric: bool = True) -> PreTransformation | None:
    """Close a random matrix under composition; None if the closure is not idempotent."""
    if symmetric:
        return random_inf_object(rng, H, carrier).relation
    n = len(carrier)
    M = [[rng.choice(H.elements) if rng.random() < 0.6 else H.bottom for _ in range(n)] for _ in range(n)]
    tau = from_entries(H, carrier, carrier, M)
    while True:
        sq = compose_inf(tau, tau)
        joined = from_entries(H, carrier, carrier,
                              [[H.join(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(tau.entries, sq.entries)])
        if joined == tau:
            break
        tau = joined
    return tau if compose_inf(tau, tau) == tau else None


def completion_breaks_idempotency(sigma: PreTransformation) -> bool:
    """sigma is an order-preserving idempotent whose infima-completion is not idempotent."""
    if compose_ord(sigma, sigma) != sigma:
        return False
    closed = inf_completion(sigma)
    return compose_inf(closed, closed) != closed


def levelwise_breaks_idempotency(tau: PreTransformation) -> bool:
    """tau is an infima-preserving idempotent that is not idempotent as an order-preserving family."""
    if compose_inf(tau, tau) != tau:
        return False
    return compose_ord(tau, tau) != tau


def search_completion_failure(seed: int = 9, trials: int = 400, max_h: int = 4, max_carrier: int = 3,
                              symmetric: bool = True) -> SearchResult:
    """Order-preserving idempotents are drawn as images of infima-preserving idempotents over D(H)."""
    rng = random.Random(seed)
    for t in range(trials):
        H = random_lattice(rng, max_h)
        A = random_carrier(rng, max_carrier, "A", minimum=1)
        tau = random_inf_idempotent(rng, downset_algebra(H), A, symmetric)
        if tau is None:
            continue
        sigma = phi(tau)
        if completion_breaks_idempotency(sigma):
            return SearchResult(sigma, t + 1, seed)
    return SearchResult(None, trials, seed)


def search_levelwise_failure(seed: int = 9, trials: int = 2000, max_h: int = 6, max_carrier: int = 4,
                             symmetric: bool = True) -> SearchResult:
    rng = random.Random(seed)
    for t in range(trials):
        H = random_lattice(rng, max_h)
        A = random_carrier(rng, max_carrier, "A", minimum=1)
        tau = random_inf_idempotent(rng, H, A, symmetric)
        if tau is not None and levelwise_breaks_idempotency(tau):
            return SearchResult(tau, t + 1, seed)
    return SearchResult(None, trials, seed)


