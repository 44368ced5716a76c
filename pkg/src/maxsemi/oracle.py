"""Brute-force ground truth, independent of the classification machinery.

``brute_force_maximal`` enumerates every subset of the semigroup and
keeps the inclusion-maximal closed proper ones; nothing from the theory
is reused.  ``verify_maximal`` checks one candidate directly from the
definition: closed, proper, and one-element extensions always generate
everything.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import CapacityError
from .semigroup_core import FiniteSemigroup, TABLE_BOUND

SUBSET_ENUMERATION_BOUND = 16
VERIFY_BOUND = 100_000


@dataclass(frozen=True)
class OracleReport:
    size: int
    maximal: tuple  # sorted tuple of frozensets of element indices
    wall_time: float


def brute_force_maximal(sg: FiniteSemigroup) -> OracleReport:
    """All 2^n subsets, filtered to non-empty closed proper ones, reduced
    to the inclusion-maximal members."""
    n = sg.size
    if n > SUBSET_ENUMERATION_BOUND:
        raise CapacityError(
            f"subset enumeration supported up to {SUBSET_ENUMERATION_BOUND} "
            f"elements, got {n}; use verify_maximal for spot checks",
            bound=SUBSET_ENUMERATION_BOUND,
        )
    start = time.perf_counter()
    rows = sg.table()
    closed = []
    for mask in range(1, (1 << n) - 1):
        members = [v for v in range(n) if mask >> v & 1]
        ok = True
        for a in members:
            row = rows[a]
            for b in members:
                if not mask >> row[b] & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            closed.append(mask)
    closed.sort(key=lambda m: -bin(m).count("1"))
    maximal_masks: list[int] = []
    for m in closed:
        if not any(m & big == m for big in maximal_masks):
            maximal_masks.append(m)
    sets = sorted(
        (frozenset(v for v in range(n) if m >> v & 1) for m in maximal_masks),
        key=sorted,
    )
    return OracleReport(
        size=n, maximal=tuple(sets), wall_time=time.perf_counter() - start)


def _closure_fills(table: np.ndarray, closed_members, x: int) -> bool:
    """True iff adjoining ``x`` to the (already closed) member set
    generates every element.  Walks only the products that involve a
    frontier element, and stops as soon as the set is full."""
    n = table.shape[0]
    in_set = np.zeros(n, dtype=bool)
    in_set[closed_members] = True
    in_set[x] = True
    frontier = np.array([x], dtype=np.intp)
    while frontier.size:
        if in_set.all():
            return True
        members = np.flatnonzero(in_set)
        prods = np.concatenate([
            table[np.ix_(frontier, members)].ravel(),
            table[np.ix_(members, frontier)].ravel(),
        ])
        new = np.unique(prods)
        new = new[~in_set[new]]
        if new.size == 0:
            break
        in_set[new] = True
        frontier = new
    return bool(in_set.all())


def _closure_plain(sg: FiniteSemigroup, seed) -> set:
    members = set(seed)
    queue = list(members)
    while queue:
        frontier = []
        snapshot = list(members)
        for a in queue:
            for b in snapshot:
                for c in (sg.product(a, b), sg.product(b, a)):
                    if c not in members:
                        members.add(c)
                        frontier.append(c)
        queue = frontier
    return members


def verify_maximal(sg: FiniteSemigroup, candidate: Iterable[int]):
    """(ok, diagnostic): ``candidate`` must be closed, proper, and such
    that adjoining any missing element generates the whole semigroup.
    The diagnostic names the first failing condition and a witness."""
    n = sg.size
    if n > VERIFY_BOUND:
        raise CapacityError(f"verify_maximal supported up to {VERIFY_BOUND} elements",
                            bound=VERIFY_BOUND)
    members = sorted(set(candidate))
    member_set = set(members)
    if not member_set:
        return False, "candidate is empty"
    if any(not 0 <= e < n for e in members):
        return False, "candidate contains indices outside the semigroup"
    for a in members:
        for b in members:
            c = sg.product(a, b)
            if c not in member_set:
                return False, f"not closed: {a} * {b} = {c} is missing"
    if len(member_set) == n:
        return False, "not proper: candidate is the whole semigroup"

    use_numpy = n <= TABLE_BOUND
    table = np.asarray(sg.table(), dtype=np.intp) if use_numpy else None
    for x in range(n):
        if x in member_set:
            continue
        if use_numpy:
            full = _closure_fills(table, members, x)
        else:
            full = len(_closure_plain(sg, members + [x])) == n
        if not full:
            return False, f"not maximal: adjoining {x} does not generate everything"
    return True, "ok"
