"""Independent multiway cut solver.

A recursive branching algorithm over "strong separators": multiway cuts
whose terminal components provably cannot swallow a whole solution.  Each
recursion step either branches on a separator vertex joining the solution
or guesses how the solution splits across a designated terminal component,
gluing the sub-results back with family convolution and trimming every
union to a representative family.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .errors import InternalInvariantViolation, NotMinimalSeparator, TooLarge
from .graph import MultiGraph, identify, multiway_cut_check
from .instances import MwcInstance, StCutInstance
from .matroid import LinearMatroid
from .repfam import SetFamily, convolve, rep_family

MAX_PARTITION_SET = 8


class Scenario(Enum):
    Type1 = 1
    Type2 = 2


@dataclass(frozen=True)
class Configuration:
    """A minimal multiway cut S with the component structure of G - S."""
    S: frozenset[str]
    components: tuple[frozenset[str], ...]
    terminal_components: tuple[frozenset[str], ...]
    sep_components: tuple[frozenset[str], ...]  # components of G[S]
    good: bool
    large_component: frozenset[str] | None


@dataclass(frozen=True)
class StrongSeparator:
    S: frozenset[str]
    C_s: frozenset[str]
    C_t: frozenset[str]


def _adjacent(G: MultiGraph, A: frozenset[str], B: frozenset[str]) -> bool:
    return any((u in A and v in B) or (u in B and v in A)
               for u, v in G.edges.values())


def classify_configuration(G: MultiGraph, T, S) -> Configuration:
    """Good/bad classification of a minimal multiway cut.

    Bad iff every component of G[S] is adjacent to exactly two terminal
    components of G - S and some component of G - S is adjacent to every
    component of G[S]; otherwise good.
    """
    T = frozenset(T)
    S = frozenset(S)
    if not multiway_cut_check(G, T, S) or \
            any(multiway_cut_check(G, T, S - {v}) for v in S):
        raise NotMinimalSeparator(f"{sorted(S)} is not a minimal cut")
    comps = tuple(frozenset(c) for c in G.remove_vertices(S).components())
    term = tuple(c for c in comps if c & T)
    sep = tuple(frozenset(c) for c in G.induced(S).components())
    bad_adjacency = all(
        sum(1 for c in term if _adjacent(G, sc, c)) == 2 for sc in sep)
    large = None
    for c in comps:
        if sep and all(_adjacent(G, sc, c) for sc in sep):
            large = c
            break
    good = not (bad_adjacency and large is not None)
    return Configuration(S, comps, term, sep, good,
                         None if good else large)


def find_minimal_multiway_cut(G: MultiGraph, T, k: int,
                              within=None) -> frozenset[str] | None:
    """Smallest multiway cut of size <= k avoiding T, exhaustively.

    ``within`` restricts candidate vertices.  The first cut found at the
    smallest feasible size is minimal.  Desk-scale by design; sits behind
    this interface so a cleverer search can slot in later.
    """
    T = frozenset(T)
    pool = sorted((set(within) if within is not None else G.vertices) - T)
    for size in range(min(k, len(pool)) + 1):
        for Z in itertools.combinations(pool, size):
            if multiway_cut_check(G, T, set(Z)):
                return frozenset(Z)
    return None


def scenario_type(G: MultiGraph, T, S, k: int) -> Scenario:
    """Whether some terminal component could hide a <= k multiway cut.

    Good configurations never can.  In a bad configuration only the large
    component may; test it by contracting each component of G[S] to a
    fresh terminal and searching the subgraph on S and the large
    component.
    """
    cfg = classify_configuration(G, T, S)
    if cfg.good:
        return Scenario.Type1
    C = cfg.large_component
    t_L = sorted(C & set(T))
    if not t_L:
        return Scenario.Type1  # large component is non-terminal
    G1 = G.induced(cfg.S | C)
    work = G1
    new_terms = []
    for i, sc in enumerate(cfg.sep_components):
        name = f"sep#{i}"
        work = identify(work, sc, name)
        new_terms.append(name)
    Tc = frozenset(new_terms) | {t_L[0]}
    return Scenario.Type2 if \
        find_minimal_multiway_cut(work, Tc, k) is not None else Scenario.Type1


def _strong_pair(G: MultiGraph, T, S) -> tuple[frozenset[str],
                                               frozenset[str]]:
    """The component pair through which every separator-avoiding
    solution must pass: two terminal components joined by a path meeting
    S only in one vertex."""
    T = frozenset(T)
    S = frozenset(S)
    comps = [frozenset(c) for c in G.remove_vertices(S).components()]

    def comp_of(x):
        return next(c for c in comps if x in c)

    for v in sorted(S):
        H = G.remove_vertices(S - {v})
        for c in H.components():
            pair = sorted(c & T)
            if len(pair) >= 2:
                return comp_of(pair[0]), comp_of(pair[1])
    raise InternalInvariantViolation("minimal separator admits no "
                                     "single-vertex terminal connection")


def find_strong_separator(G: MultiGraph, T, k: int
                          ) -> StrongSeparator | None:
    """A minimal multiway cut that is good or forces a type 1 scenario.

    Repeatedly re-separates inside the large component (with the rest of
    the graph collapsed onto merged separator vertices) until the current
    separator is strong; returns it with the designated component pair.
    """
    T = frozenset(T)
    S = find_minimal_multiway_cut(G, T, k)
    if S is None:
        return None
    seen = set()
    for _ in range(len(G.vertices) + 2):
        if S in seen:
            raise InternalInvariantViolation("separator search cycled")
        seen.add(S)
        if scenario_type(G, T, S, k) is Scenario.Type1:
            C_s, C_t = _strong_pair(G, T, S)
            return StrongSeparator(S, C_s, C_t)
        cfg = classify_configuration(G, T, S)
        C_L = cfg.large_component
        t_L = sorted(C_L & T)[0]
        # Collapse everything outside the large component: merge the
        # separator vertices reachable from each remaining terminal.
        G1 = G.remove_vertices(C_L)
        groups: list[set[str]] = []
        for t in sorted(T - {t_L}):
            reach_t = _reachable_set(G1, t) & S
            groups.append({t} | reach_t)
        merged = _merge_overlapping(groups)
        work = G.induced(S | C_L | (T - {t_L}))
        terms = []
        for i, grp in enumerate(merged):
            if len(grp & T) > 1:
                raise InternalInvariantViolation(
                    "terminals collapse together outside the large "
                    "component")
            name = f"merge#{i}"
            work = identify(work, grp, name)
            terms.append(name)
        Tm = frozenset(terms) | {t_L}
        S1 = find_minimal_multiway_cut(work, Tm, k)
        if S1 is None:
            raise InternalInvariantViolation(
                "type 2 scenario without an inner separator")
        # S1 lives inside the large component, hence inside G; make it a
        # minimal cut for the original terminals.
        S = _shrink_to_minimal(G, T, S1)
    raise InternalInvariantViolation("separator search did not converge")


def _reachable_set(G: MultiGraph, x: str) -> set[str]:
    for c in G.components():
        if x in c:
            return set(c)
    return {x}


def _merge_overlapping(groups: list[set[str]]) -> list[set[str]]:
    out: list[set[str]] = []
    for g in groups:
        g = set(g)
        keep = []
        for h in out:
            if h & g:
                g |= h
            else:
                keep.append(h)
        keep.append(g)
        out = keep
    return [set(sorted(g)) for g in out]


def _shrink_to_minimal(G: MultiGraph, T, S) -> frozenset[str]:
    if not multiway_cut_check(G, T, S):
        raise InternalInvariantViolation(
            "inner separator does not cut the original terminals")
    S = set(S)
    for v in sorted(S):
        if multiway_cut_check(G, T, S - {v}):
            S.discard(v)
    return frozenset(S)


def enumerate_partitions(X) -> list[tuple[frozenset[str], ...]]:
    """All set partitions of X in a canonical (restricted-growth) order."""
    X = sorted(set(X))
    if len(X) > MAX_PARTITION_SET:
        raise TooLarge(f"refusing to enumerate partitions of {len(X)} "
                       f"elements")
    if not X:
        return [()]
    out: list[tuple[frozenset[str], ...]] = []

    def grow(i: int, parts: list[list[str]]):
        if i == len(X):
            out.append(tuple(frozenset(p) for p in parts))
            return
        for p in parts:
            p.append(X[i])
            grow(i + 1, parts)
            p.pop()
        parts.append([X[i]])
        grow(i + 1, parts)
        parts.pop()

    grow(0, [])
    return out


# --------------------------------------------------------------------------
# The recursive solver
# --------------------------------------------------------------------------

def _is_solution(G: MultiGraph, T, Q, M, S, k: int) -> bool:
    """Minimal independent multiway cut of size exactly k avoiding Q."""
    if len(S) != k or S & set(Q):
        return False
    if not S <= M.ground or not M.is_independent(S):
        return False
    if not multiway_cut_check(G, T, S):
        return False
    return all(not multiway_cut_check(G, T, S - {v}) for v in S)


def imwcut(inst: MwcInstance, seed: int = 0, stats: dict | None = None,
           _depth: int = 0) -> SetFamily:
    """Representative family of minimal independent multiway cuts of
    size exactly k, trimmed to co-budget q."""
    G, M, k, q = inst.graph, inst.matroid, inst.k, inst.q
    T = set(inst.T)
    Q = set(inst.Q)
    if stats is not None:
        stats["calls"] = stats.get("calls", 0) + 1
        stats["max_depth"] = max(stats.get("max_depth", 0), _depth)
    if k + q > M.rank():
        raise ValueError(f"k+q = {k + q} exceeds rank {M.rank()}")

    # Step 0a/0b: drop vertices and terminals in terminal-free or
    # single-terminal components.
    comps = [set(c) for c in G.components()]
    drop_v: set[str] = set()
    drop_t: set[str] = set()
    for c in comps:
        ts = c & T
        if not ts:
            drop_v |= c
        elif len(ts) == 1:
            drop_t |= ts
    if drop_t:
        # Removing a lone terminal may strand its component next pass.
        sub = MwcInstance(G.remove_vertices(drop_v | drop_t), M,
                          frozenset(T - drop_t), frozenset(Q - drop_t),
                          k, q)
        return imwcut(sub, seed=seed, stats=stats, _depth=_depth)
    if drop_v:
        G = G.remove_vertices(drop_v)
        comps = [set(c) for c in G.components()]

    if k == 0:
        ok = multiway_cut_check(G, T, set())
        return SetFamily(0, [frozenset()]) if ok else SetFamily(0)

    # Step 0c: adjacent terminals, then too many components.
    if any(u in T and v in T and u != v for u, v in G.edges.values()):
        return SetFamily(k)
    if len(T) < 2:
        return SetFamily(k)  # nothing to separate at positive budget
    if len(comps) > k:
        return SetFamily(k)

    # Step 1 base cases.
    if k == 1:
        members = [frozenset({v}) for v in sorted(G.vertices - Q)
                   if v in M.ground and M.is_independent({v})
                   and multiway_cut_check(G, T, {v})]
        return rep_family(M, SetFamily(1, members), q, seed=seed) \
            if members else SetFamily(1)
    if len(T) == 2:
        s, t = sorted(T)
        sub = StCutInstance(G, M, s, t, frozenset(Q), k, q)
        from .stcut import givc_solve
        return givc_solve(sub, seed=seed)

    # Step 2: disconnected graph — convolve per-component families over
    # every composition of k.
    if len(comps) > 1:
        return _disconnected(G, M, T, Q, k, q, comps, seed, stats, _depth)

    # Step 3: strong separator.
    strong = find_strong_separator(G, T, k)
    if strong is None:
        return SetFamily(k)

    union: list[frozenset[str]] = []

    # Step 4, case A: a separator vertex joins the solution.
    for v in sorted(strong.S):
        if v in Q or v not in M.ground or not M.is_independent({v}):
            continue
        sub = MwcInstance(G.remove_vertices({v}), M, frozenset(T),
                          frozenset(Q), k - 1, q + 1)
        fv = imwcut(sub, seed=seed, stats=stats, _depth=_depth + 1)
        union.extend(convolve(fv, SetFamily(1, [frozenset({v})]), M))

    # Step 4, case B: the solution splits across a designated terminal
    # component.
    for C in (strong.C_t, strong.C_s):
        union.extend(_component_guesses(G, M, T, Q, k, q, strong.S, C,
                                        seed, stats, _depth))

    fam = SetFamily(k, [S for S in union if _is_solution(G, T, Q, M, S, k)])
    return rep_family(M, fam, q, seed=seed) if fam.sets else fam


def _disconnected(G, M, T, Q, k, q, comps, seed, stats, depth) -> SetFamily:
    comps = sorted((sorted(c) for c in comps))
    ell = len(comps)
    union: list[frozenset[str]] = []
    memo: dict[tuple[int, int], SetFamily] = {}

    def part_family(i: int, ki: int) -> SetFamily:
        if (i, ki) not in memo:
            c = set(comps[i])
            sub = MwcInstance(G.induced(c), M, frozenset(T & c),
                              frozenset(Q & c), ki, q + k - ki)
            memo[(i, ki)] = imwcut(sub, seed=seed, stats=stats,
                                   _depth=depth + 1)
        return memo[(i, ki)]

    for split in itertools.product(range(1, k - ell + 2), repeat=ell):
        if sum(split) != k:
            continue
        acc = SetFamily.empty_member()
        for i, ki in enumerate(split):
            nxt = part_family(i, ki)
            if not nxt.sets:
                acc = None
                break
            acc = convolve(acc, nxt, M)
            if not acc.sets:
                acc = None
                break
        if acc is not None:
            union.extend(acc)
    fam = SetFamily(k, [S for S in union if _is_solution(G, T, Q, M, S, k)])
    return rep_family(M, fam, q, seed=seed) if fam.sets else fam


def _component_guesses(G, M, T, Q, k, q, S, C, seed, stats,
                       depth) -> list[frozenset[str]]:
    """All (partition, split) guesses for solutions putting 1..k-1
    vertices inside component C."""
    t = sorted(C & T)[0]
    reach_graph = G.induced(C | S)
    reach = _reachable_set(reach_graph, t) & S
    out: list[frozenset[str]] = []
    for P in enumerate_partitions(reach | {t}):
        # Instance 1: inside the component, merged boundary as terminals.
        H = G.induced(C | reach)
        G1 = H
        pnames = {}
        for i, part in enumerate(sorted(P, key=lambda p: sorted(p))):
            name = f"part#{i}"
            G1 = identify(G1, part, name)
            pnames[part] = name
        T1 = frozenset(pnames.values())
        if len(T1) < 2:
            continue  # no separation constraint inside C
        P_t = next(p for p in P if t in p)
        # Instance 2: outside the component, parts merged the same way.
        keep = (G.vertices - C) | reach | {t}
        G2 = G.induced(keep)
        for part, name in pnames.items():
            G2 = identify(G2, part, name)
        if len(P_t) == 1:
            G2 = G2.remove_vertices({pnames[P_t]})
            T2 = frozenset(T - {t})
            Q2 = (Q - {t}) | {n for p, n in pnames.items() if p != P_t}
        else:
            T2 = frozenset(T - {t}) | {pnames[P_t]}
            Q2 = (Q - {t}) | set(pnames.values())
        for k1 in range(1, k):
            k2 = k - k1
            i1 = MwcInstance(G1, M, T1, T1, k1, q + k2)
            f1 = imwcut(i1, seed=seed, stats=stats, _depth=depth + 1)
            if not f1.sets:
                continue
            i2 = MwcInstance(G2, M, T2, frozenset(Q2), k2, q + k1)
            f2 = imwcut(i2, seed=seed, stats=stats, _depth=depth + 1)
            if not f2.sets:
                continue
            out.extend(convolve(f1, f2, M))
    return out


def mwc_feasible(G: MultiGraph, M: LinearMatroid, T, k_max: int,
                 seed: int = 0) -> SetFamily | None:
    """Iterate k upward; first nonempty family wins, None if infeasible."""
    r = M.rank()
    T = frozenset(T)
    for k in range(0, min(k_max, r) + 1):
        inst = MwcInstance(G, M, T, T, k, r - k)
        fam = imwcut(inst, seed=seed)
        if fam.sets:
            return fam
    return None
