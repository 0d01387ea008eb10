"""Pruned exhaustive backtracking for cyclic frame starters.

The engine works on dense integers 0..g-1 with bitmask occupancy sets for
members, +-differences and +-sums.  The search tree is canonical: the root
always places the pair realizing the difference class {1, -1} (every frame
starter contains exactly one), and below the root each node branches on
the most constrained requirement - either an uncovered element that must
be paired or an unused difference class that must be realized - trying its
placements in ascending order.  The target is a deterministic function of
the state, so every starter is generated exactly once and exhaustive
counts are exact.  A requirement with no remaining placement prunes the
node immediately; this fail-first ordering is what makes witnesses in
groups of order ~50 reachable in seconds.

Every candidate that survives to a full pairing is re-verified through the
independent verifier before it is reported; the acceleration structures
are never trusted.

Symmetry reduction exploits negation x -> -x, which maps starters to
starters of the same kind.  Writing the root pair {x, x+1}, negation sends
the base point x to g-1-x, so exploring only x <= (g-1)/2 keeps one
representative of every orbit.  This prunes for existence questions;
exact counts are taken with the reduction switched off.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Iterable

from .errors import FrameStarterError, InvalidTypeError
from .groups import GroupSpec, cyclic_subgroup
from .starters import FrameStarter, make_starter, verify_skew
from .theory import StarterType

MODES = ("find_first", "exhaustive_count", "prove_nonexistence")

#: Above this order an explicit node budget is mandatory; open cells get
#: expensive quickly and the tool must not silently run forever.
BUDGET_FREE_MAX_ORDER = 60

WORKERS_ENV_VAR = "FRAMESTARTERS_WORKERS"


@dataclass(frozen=True, slots=True)
class SearchConfig:
    target_type: StarterType
    property: str = "skew"
    mode: str = "find_first"
    node_budget: int | None = None
    worker_count: int = 1
    symmetry_reduction: bool = True
    progress_interval: int = 0

    def __post_init__(self):
        if self.property not in ("frame", "strong", "skew"):
            raise InvalidTypeError(f"unknown property {self.property!r}")
        if self.mode not in MODES:
            raise InvalidTypeError(f"unknown search mode {self.mode!r}")
        if self.node_budget is not None and self.node_budget < 1:
            raise InvalidTypeError("node budget must be >= 1 when given")
        if self.worker_count < 1:
            raise InvalidTypeError("worker count must be >= 1")


@dataclass(frozen=True, slots=True)
class SearchOutcome:
    result: str  # "found" | "exhausted_none" | "budget_exceeded"
    starters: tuple[FrameStarter, ...]
    nodes_visited: int
    wall_time: float
    config: SearchConfig


class _Stop(Exception):
    """Internal: first verified starter found in a stop-early mode."""


class _Budget(Exception):
    """Internal: node budget exhausted."""


def _candidate_table(g: int, r: int, level: str):
    """cand[x][y] = (pair_mask, diff_mask, sum_mask) or None when infeasible.

    None encodes every per-pair rejection: a member or difference or sum in
    H, a self-negative difference (it could cover only one element of the
    difference partition), and for skew a self-negative sum.
    """
    strongish = level in ("strong", "skew")
    skew = level == "skew"
    cand: list[list[tuple[int, int, int] | None]] = [[None] * g for _ in range(g)]
    for x in range(1, g):
        if x % r == 0:
            continue
        row = cand[x]
        for y in range(1, g):
            if y == x or y % r == 0:
                continue
            d = (y - x) % g
            if d % r == 0:
                continue
            nd = g - d
            if d == nd:
                continue
            sum_mask = 0
            if strongish:
                s = (x + y) % g
                if s % r == 0:
                    continue
                sum_mask = 1 << s
                if skew:
                    ns = (g - s) % g
                    if s == ns:
                        continue
                    sum_mask |= 1 << ns
            row[y] = ((1 << x) | (1 << y), (1 << d) | (1 << nd), sum_mask)
    return cand


def _root_branches(g: int, r: int, level: str, symmetry: bool,
                   cand=None) -> list[tuple[int, int]]:
    """Placements of the difference-class {1, -1} pair, the fixed root item.

    Negation maps the pair {x, x+1} to {g-1-x, g-x}, so with symmetry on
    only base points x <= (g-1)/2 are kept: one representative per orbit.
    """
    if cand is None:
        cand = _candidate_table(g, r, level)
    top = (g - 1) // 2 if symmetry else g - 2
    return [(x, x + 1) for x in range(1, top + 1)
            if cand[x][x + 1] is not None]


def _verified_starter(g: int, h: int, level: str,
                      raw_pairs: Iterable[tuple[int, int]]) -> FrameStarter:
    group = GroupSpec((g,))
    sub = cyclic_subgroup(group, h)
    starter = make_starter(group, sub, raw_pairs)
    report = verify_skew(starter)
    if not report.holds(level):
        raise RuntimeError(
            f"search emitted a candidate failing {level} verification: "
            f"{report.witness}"
        )
    return starter


def _static_masks(g: int, r: int, cand):
    """Per-element partner masks and per-class placement masks."""
    static_ok = [0] * g
    for x in range(g):
        row = cand[x]
        mask = 0
        for y in range(g):
            if row[y] is not None:
                mask |= 1 << y
        static_ok[x] = mask
    classes = [d for d in range(1, (g - 1) // 2 + 1) if d % r]
    class_static = {}
    for d in classes:
        mask = 0
        for x in range(g):
            if cand[x][(x + d) % g] is not None:
                mask |= 1 << x
        class_static[d] = mask
    return static_ok, classes, class_static


def _choose_options(g: int, mask_g: int, free: int, notdiff: int, notsum: int,
                    strongish: bool, static_ok, classes, class_static):
    """Most constrained requirement at this state, as ("element"|"class", key,
    options bitmask), or None when some requirement has no options left.

    Element requirements carry an exact mask of feasible partners; class
    requirements carry an upper bound (per-placement sum collisions are
    re-checked when branching).  The scan stops early at a single-option
    requirement; any zero-option requirement it skipped then surfaces one
    level deeper, which costs little in practice.
    """
    best_n = g + 1
    best = None
    scan = free
    while scan:
        xb = scan & -scan
        scan ^= xb
        x = xb.bit_length() - 1
        m = free & static_ok[x] & (((notdiff << x) | (notdiff >> (g - x)))
                                   & mask_g)
        if strongish:
            m &= ((notsum >> x) | (notsum << (g - x))) & mask_g
        n = m.bit_count()
        if n == 0:
            return None
        if n < best_n:
            best_n, best = n, ("element", x, m)
            if n == 1:
                return best
    if best_n > 1:
        for d in classes:
            if not (notdiff >> d) & 1:
                continue
            pl = free & (((free >> d) | (free << (g - d))) & mask_g) \
                & class_static[d]
            n = pl.bit_count()
            if n == 0:
                return None
            if n < best_n:
                best_n, best = n, ("class", d, pl)
                if n == 1:
                    break
    return best


def _option_pairs(g: int, kind: str, key: int, opts: int):
    """Expand a requirement's option mask into candidate pairs, ascending."""
    out = []
    while opts:
        ob = opts & -opts
        opts ^= ob
        v = ob.bit_length() - 1
        if kind == "element":
            out.append((key, v) if key < v else (v, key))
        else:
            a, b = v, (v + key) % g
            out.append((a, b) if a < b else (b, a))
    return out


def _run_slice(g: int, h: int, level: str, mode: str, budget: int | None,
               roots: list[tuple[int, int]],
               progress: Callable[[int, int, float], None] | None = None,
               progress_interval: int = 0):
    """Explore the subtrees under the given root pairs.

    Returns (status, raw_solutions, nodes) with status one of "exhausted",
    "found" (stop-early modes only) or "budget".
    """
    r = g // h
    strongish = level in ("strong", "skew")
    cand = _candidate_table(g, r, level)
    static_ok, classes, class_static = _static_masks(g, r, cand)
    mask_g = (1 << g) - 1
    full = 0
    for v in range(1, g):
        if v % r:
            full |= 1 << v

    nodes = 0
    solutions: list[tuple[tuple[int, int], ...]] = []
    stack: list[tuple[int, int]] = []
    stop_early = mode != "exhaustive_count"
    started = time.perf_counter()

    def note_node():
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise _Budget
        if progress_interval and progress is not None \
                and nodes % progress_interval == 0:
            progress(nodes, len(stack), time.perf_counter() - started)

    def extend(used: int, used_diff: int, used_sum: int):
        if used == full:
            _verified_starter(g, h, level, stack)
            solutions.append(tuple(stack))
            if stop_early:
                raise _Stop
            return
        free = full & ~used
        best = _choose_options(g, mask_g, free, ~used_diff & mask_g,
                               ~used_sum & mask_g, strongish,
                               static_ok, classes, class_static)
        if best is None:
            return
        kind, key, opts = best
        while opts:
            ob = opts & -opts
            opts ^= ob
            v = ob.bit_length() - 1
            if kind == "element":
                a, b = (key, v) if key < v else (v, key)
            else:
                a, b = v, (v + key) % g
            pm, dm, sm = cand[a][b]
            if used & pm or used_diff & dm or used_sum & sm:
                continue  # class placements are an upper bound
            note_node()
            stack.append((a, b) if a < b else (b, a))
            extend(used | pm, used_diff | dm, used_sum | sm)
            stack.pop()

    status = "exhausted"
    try:
        for x, y in roots:
            entry = cand[x][y]
            if entry is None:
                continue
            pm, dm, sm = entry
            note_node()
            stack.append((x, y))
            extend(pm, dm, sm)
            stack.pop()
    except _Stop:
        status = "found"
    except _Budget:
        status = "budget"
        nodes -= 1  # the placement that tripped the budget never happened
    return status, solutions, nodes


def _slice_worker(payload: dict) -> dict:
    status, solutions, nodes = _run_slice(
        payload["g"], payload["h"], payload["level"], payload["mode"],
        payload["budget"], payload["roots"],
    )
    return {"status": status, "solutions": solutions, "nodes": nodes}


def default_worker_count() -> int:
    value = os.environ.get(WORKERS_ENV_VAR, "").strip()
    if value.isdigit() and int(value) >= 1:
        return int(value)
    return 1


def search(cfg: SearchConfig,
           progress: Callable[[int, int, float], None] | None = None,
           ) -> SearchOutcome:
    """Run the backtracking search described by the config.

    find_first and prove_nonexistence stop at the first verified starter;
    exhaustive_count traverses the whole canonical tree.  exhausted_none is
    reported only after a complete traversal, never after a budget cut.
    With several workers the root placements are split statically across
    processes (node budget applies per worker, progress reporting is
    single-worker only) and results merge in canonical starter order.
    """
    t = cfg.target_type
    if not t.cyclic:
        raise InvalidTypeError("the optimized engine only searches cyclic groups")
    if not t.admissible:
        raise InvalidTypeError(
            f"type {t} has odd g - h = {t.g - t.h}; no pairing exists"
        )
    if cfg.node_budget is None and t.g > BUDGET_FREE_MAX_ORDER:
        raise FrameStarterError(
            f"searches with g = {t.g} > {BUDGET_FREE_MAX_ORDER} require an "
            f"explicit node budget"
        )

    g, h, r = t.g, t.h, t.u
    started = time.perf_counter()
    roots = _root_branches(g, r, cfg.property, cfg.symmetry_reduction)

    if cfg.worker_count == 1:
        status, solutions, nodes = _run_slice(
            g, h, cfg.property, cfg.mode, cfg.node_budget, roots,
            progress, cfg.progress_interval,
        )
        statuses = [status]
    else:
        slices = [roots[i::cfg.worker_count] for i in range(cfg.worker_count)]
        payloads = [
            {"g": g, "h": h, "level": cfg.property, "mode": cfg.mode,
             "budget": cfg.node_budget, "roots": sl}
            for sl in slices if sl
        ]
        solutions = []
        statuses = []
        nodes = 0
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
            for result in pool.map(_slice_worker, payloads):
                statuses.append(result["status"])
                solutions.extend(result["solutions"])
                nodes += result["nodes"]

    starters = tuple(sorted(
        (_verified_starter(g, h, cfg.property, sol) for sol in solutions),
        key=lambda s: s.pairs,
    ))
    if starters:
        if cfg.mode != "exhaustive_count":
            starters = starters[:1]
            result = "found"
        elif "budget" in statuses:
            result = "budget_exceeded"
        else:
            result = "found"
    elif "budget" in statuses:
        result = "budget_exceeded"
    else:
        result = "exhausted_none"
    return SearchOutcome(
        result=result,
        starters=starters,
        nodes_visited=nodes,
        wall_time=time.perf_counter() - started,
        config=cfg,
    )


def search_strong(cfg: SearchConfig,
                  progress: Callable[[int, int, float], None] | None = None,
                  ) -> SearchOutcome:
    """Convenience wrapper forcing the strong property level."""
    return search(replace(cfg, property="strong"), progress)


def canonical_first_branch(cfg: SearchConfig,
                           placed: Iterable[tuple[int, int]] = (),
                           ) -> list[tuple[int, int]]:
    """Candidate pairs for the next branch of the canonical tree.

    With nothing placed this is the root policy: the placements of the
    difference-class {1, -1} pair, negation-reduced when symmetry is on.
    Afterwards it returns the placements of the most constrained open
    requirement, exactly as the engine would branch; an empty list means
    the state is complete or provably dead.
    """
    t = cfg.target_type
    g, r = t.g, t.u
    cand = _candidate_table(g, r, cfg.property)
    placed = list(placed)
    if not placed:
        return _root_branches(g, r, cfg.property, cfg.symmetry_reduction, cand)

    full = 0
    for v in range(1, g):
        if v % r:
            full |= 1 << v
    used = used_diff = used_sum = 0
    for x, y in placed:
        entry = cand[x][y]
        if entry is None:
            raise InvalidTypeError(f"placed pair ({x}, {y}) is infeasible")
        pm, dm, sm = entry
        used |= pm
        used_diff |= dm
        used_sum |= sm
    free = full & ~used
    if not free:
        return []
    mask_g = (1 << g) - 1
    static_ok, classes, class_static = _static_masks(g, r, cand)
    best = _choose_options(g, mask_g, free, ~used_diff & mask_g,
                           ~used_sum & mask_g,
                           cfg.property in ("strong", "skew"),
                           static_ok, classes, class_static)
    if best is None:
        return []
    kind, key, opts = best
    out = []
    for a, b in _option_pairs(g, kind, key, opts):
        pm, dm, sm = cand[a][b]
        if used & pm or used_diff & dm or used_sum & sm:
            continue
        out.append((a, b))
    return out


# ---------------------------------------------------------------------------
# Brute-force oracle: enumerate every perfect pairing of G \ H with no
# pruning and no symmetry, then test the finished pairing.  Deliberately
# independent of the engine above; only sane for g <= ~16.

def _pairing_properties(g: int, r: int,
                        pairs: list[tuple[int, int]]) -> tuple[bool, bool, bool]:
    n = 2 * len(pairs)
    diffs = []
    for x, y in pairs:
        d = (y - x) % g
        diffs.append(d)
        diffs.append(g - d)
    frame = all(d % r for d in diffs) and len(set(diffs)) == n
    sums = [(x + y) % g for x, y in pairs]
    strong = frame and all(s % r for s in sums) and len(set(sums)) == len(sums)
    pm = sums + [(g - s) % g for s in sums]
    skew = strong and all(v % r for v in pm) and len(set(pm)) == n
    return frame, strong, skew


def naive_enumerate(t: StarterType, level: str) -> list[FrameStarter]:
    """All starters of the type at the given level, by unpruned enumeration."""
    if not t.cyclic:
        raise InvalidTypeError("the oracle enumerates cyclic groups only")
    if not t.admissible:
        raise InvalidTypeError(f"type {t} admits no pairing")
    g, r = t.g, t.u
    idx = {"frame": 0, "strong": 1, "skew": 2}[level]
    elements = [v for v in range(1, g) if v % r]
    hits: list[tuple[tuple[int, int], ...]] = []
    pairs: list[tuple[int, int]] = []

    def rec(remaining: list[int]):
        if not remaining:
            if _pairing_properties(g, r, pairs)[idx]:
                hits.append(tuple(pairs))
            return
        x = remaining[0]
        for i in range(1, len(remaining)):
            y = remaining[i]
            pairs.append((x, y))
            rec(remaining[1:i] + remaining[i + 1:])
            pairs.pop()

    rec(elements)
    return [_verified_starter(g, t.h, level, sol) for sol in hits]
