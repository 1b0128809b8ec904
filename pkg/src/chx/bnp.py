"""Breadth-first branch-and-prune over axis-aligned boxes.

A box is a tuple of (lo, hi) float pairs. One generation bisects every
dimension of every surviving box, so depth d means boxes of width 2^-d of
the root box. The predicate decides a box: EXCLUDED drops it, HOLDS drops it
as certified, UNKNOWN keeps it for the next generation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

EXCLUDED, HOLDS, UNKNOWN = "excluded", "holds", "unknown"


@dataclass
class PruneResult:
    survivors: list
    depth: int
    evaluated: int
    complete: bool          # False when the box budget stopped the run
    excluded: int = 0
    held: int = 0

    @property
    def empty(self) -> bool:
        return self.complete and not self.survivors

    def hull(self):
        if not self.survivors:
            return None
        n = len(self.survivors[0])
        return tuple((min(b[i][0] for b in self.survivors), max(b[i][1] for b in self.survivors))
                     for i in range(n))

    def summary(self) -> dict:
        return {"depth": self.depth, "evaluated": self.evaluated, "survivors": len(self.survivors),
                "excluded": self.excluded, "held": self.held, "complete": self.complete,
                "hull": self.hull()}


def bisect(box):
    halves = []
    for lo, hi in box:
        m = 0.5 * (lo + hi)
        halves.append(((lo, m), (m, hi)))
    return [tuple(c) for c in product(*halves)]


def branch_and_prune(root, pred, depth: int, max_boxes: int = 200_000, stop_when=None) -> PruneResult:
    """Run until depth generations are done, the queue empties or the budget trips.

    stop_when(survivors, gen) may end the run early (e.g. enclosure small enough).
    """
    live = [tuple(root)]
    evaluated = excluded = held = 0
    gen = 0
    while True:
        nxt = []
        for b in live:
            evaluated += 1
            r = pred(b)
            if r == EXCLUDED:
                excluded += 1
            elif r == HOLDS:
                held += 1
            else:
                nxt.append(b)
        live = nxt
        if not live or gen >= depth:
            return PruneResult(live, gen, evaluated, True, excluded, held)
        if stop_when is not None and stop_when(live, gen):
            return PruneResult(live, gen, evaluated, True, excluded, held)
        n = len(live[0])
        if len(live) * (2 ** n) > max_boxes:
            return PruneResult(live, gen, evaluated, False, excluded, held)
        live = [c for b in live for c in bisect(b)]
        gen += 1
