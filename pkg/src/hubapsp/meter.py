"""Logical work/depth accounting for the parallel cost model.

The meter does not time anything.  It records what an algorithm would cost
on an idealized parallel machine: ``work`` counts primitive operations
(edge relaxations, min-plus inner terms, comparisons inside reductions),
``depth`` counts the longest chain of operations that must run one after
another.  Phases entered in sequence add both work and depth; iterations
inside a parallel region add their work but only the largest iteration
depth.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple


@dataclass(frozen=True)
class PhaseEntry:
    """One closed phase: slash-qualified name plus its own (not rolled-up) cost."""

    name: str
    work: int
    depth: int
    modeled: bool = False


@dataclass(frozen=True)
class WorkDepthReport:
    total_work: int
    total_depth: int
    phases: Tuple[PhaseEntry, ...]

    def measured_totals(self) -> Tuple[int, int]:
        """Totals over measured entries only, excluding modeled ones."""
        w = sum(p.work for p in self.phases if not p.modeled)
        d = sum(p.depth for p in self.phases if not p.modeled)
        return w, d

    def subtotal(self, prefix: str) -> Tuple[int, int]:
        """Rolled-up (work, depth) of a phase and everything nested under it."""
        w = d = 0
        for p in self.phases:
            if p.name == prefix or p.name.startswith(prefix + "/"):
                w += p.work
                d += p.depth
        return w, d


class CostMeter:
    """Accumulates phase-structured work/depth counts.

    Phases nest; a nested phase's cost rolls into its parent through the
    slash-qualified entry names (see ``WorkDepthReport.subtotal``).  All
    entries are disjoint, so summing entries gives the sequential total.
    """

    def __init__(self) -> None:
        self._stack: list[list] = []  # [name, work, depth]
        self._entries: list[PhaseEntry] = []
        self._loose_work = 0
        self._loose_depth = 0

    def enter_phase(self, name: str) -> None:
        self._stack.append([name, 0, 0])

    def exit_phase(self) -> None:
        if not self._stack:
            raise RuntimeError("exit_phase without matching enter_phase")
        name, work, depth = self._stack.pop()
        qual = "/".join(f[0] for f in self._stack + [[name]])
        self._entries.append(PhaseEntry(qual, work, depth, modeled=False))

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        self.enter_phase(name)
        try:
            yield
        finally:
            self.exit_phase()

    def add(self, work: int, depth: int) -> None:
        """Charge a sequential chunk of cost to the current phase."""
        if self._stack:
            frame = self._stack[-1]
            frame[1] += work
            frame[2] += depth
        else:
            self._loose_work += work
            self._loose_depth += depth

    def parallel_region(self, iterations: Iterable[Tuple[int, int]]) -> None:
        """Charge a region of independent iterations.

        Work adds across iterations; depth is the maximum iteration depth.
        """
        total = 0
        deepest = 0
        for w, d in iterations:
            total += w
            if d > deepest:
                deepest = d
        self.add(total, deepest)

    def record_modeled(self, name: str, work: int, depth: int) -> None:
        """Record a cost taken from a formula rather than counted operations."""
        qual = "/".join([f[0] for f in self._stack] + [name])
        self._entries.append(PhaseEntry(qual, work, depth, modeled=True))

    def report(self) -> WorkDepthReport:
        if self._stack:
            raise RuntimeError("report() with %d phase(s) still open" % len(self._stack))
        entries = list(self._entries)
        if self._loose_work or self._loose_depth:
            entries.append(PhaseEntry("(unscoped)", self._loose_work, self._loose_depth))
        total_w = sum(p.work for p in entries)
        total_d = sum(p.depth for p in entries)
        return WorkDepthReport(total_w, total_d, tuple(entries))
