"""Brute-force reference computations, used only by tests.

Nothing here calls the package's searches; only tables, ``generate`` and
the named-group constructors are shared.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from pathlib import Path

import numpy as np

from ultrasolv.core import FiniteGroup, SubgroupMask, generate

DATA = Path(__file__).parent / "data"


def gap_reference() -> dict[str, dict]:
    with open(DATA / "gap_reference.jsonl") as fh:
        return {r["id"]: r for r in map(json.loads, fh)}


def all_subgroups(G: FiniteGroup) -> list[SubgroupMask]:
    """Every subgroup, by closing cyclic subgroups under pairwise joins."""
    found = {}
    for x in range(G.order):
        H = generate(G, [x])
        found.setdefault(H.key, H)
    frontier = list(found.values())
    while frontier:
        new = []
        for A in frontier:
            for B in list(found.values()):
                J = generate(G, B.elements, base=A)
                if J.key not in found:
                    found[J.key] = J
                    new.append(J)
        frontier = new
    return sorted(found.values(), key=lambda H: H.sort_key)


def homomorphisms(G: FiniteGroup, H: FiniteGroup, bijective: bool = False) -> list[np.ndarray]:
    """All homomorphisms G -> H by trying every image tuple on a generating set."""
    gens = list(G.gens)
    out = []
    for imgs in itertools.product(range(H.order), repeat=len(gens)):
        phi = np.full(G.order, -1, dtype=np.int64)
        phi[0] = 0
        queue = deque([0])
        ok = True
        while queue and ok:
            a = queue.popleft()
            for g, ig in zip(gens, imgs):
                b = int(G.table[a, g])
                v = int(H.table[phi[a], ig])
                if phi[b] < 0:
                    phi[b] = v
                    queue.append(b)
                elif phi[b] != v:
                    ok = False
                    break
        if not ok:
            continue
        if not np.array_equal(H.table[np.ix_(phi, phi)], phi[G.table]):
            continue
        if bijective and np.unique(phi).size != G.order:
            continue
        out.append(phi)
    return out


def automorphisms(G: FiniteGroup) -> list[np.ndarray]:
    return homomorphisms(G, G, bijective=True)


def _normal_in(G: FiniteGroup, H: SubgroupMask, K: SubgroupMask) -> bool:
    ks, hs = K.elements, H.elements
    conj = G.table[G.table[np.ix_(G.inverse[ks], hs)], ks[:, None]]
    return bool(H.members[conj].all())


def _cyclic_factor(G: FiniteGroup, H: SubgroupMask, K: SubgroupMask) -> bool:
    return any(generate(G, [int(y)], base=H) == K for y in K.elements)


def has_invariant_cyclic_series(G: FiniteGroup, maps: list[np.ndarray],
                                normal_in_group: bool = False) -> bool:
    """Search the full lattice of invariant subgroups for a cyclic series."""
    subs = [H for H in all_subgroups(G)
            if all(H.members[m[H.elements]].all() for m in maps)]
    full = SubgroupMask(G, np.ones(G.order, dtype=bool))
    if normal_in_group:
        subs = [H for H in subs if _normal_in(G, H, full)]
    reach = {subs[0].key}
    for K in subs[1:]:
        for H in subs:
            if (H.key in reach and H < K and _normal_in(G, H, K)
                    and _cyclic_factor(G, H, K)):
                reach.add(K.key)
                break
    return full.key in reach


def inner_maps(G: FiniteGroup) -> list[np.ndarray]:
    return [G.conjugation(g) for g in range(G.order)]


def frattini_by_maximals(G: FiniteGroup) -> SubgroupMask:
    subs = all_subgroups(G)
    proper = [H for H in subs if H.order < G.order]
    maximal = [H for H in proper if not any(H < K for K in proper)]
    m = np.ones(G.order, dtype=bool)
    for H in maximal:
        m &= H.members
    return SubgroupMask(G, m)


def invariants_from_omega_counts(G: FiniteGroup, p: int) -> list[int]:
    """Cyclic factor exponents of an abelian p-group from ``|{x : x^(p^k) = 1}|``.

    ``log_p |Omega_k| = sum_i min(a_i, k)``, so successive differences count
    the factors with ``a_i >= k``.
    """
    orders = G.element_order
    logs = [0]
    k = 1
    while True:
        size = int(np.count_nonzero((p ** k) % orders == 0))
        e = round(np.log(size) / np.log(p))
        logs.append(e)
        if size == G.order:
            break
        k += 1
    at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))] + [0]
    exps = []
    for k in range(1, len(at_least)):
        exps += [k] * (at_least[k - 1] - at_least[k])
    return sorted(exps)


def chief_factor_multiset_bruteforce(G: FiniteGroup) -> list[int]:
    """Factor orders of a chief series built from the full normal-subgroup list."""
    full = SubgroupMask(G, np.ones(G.order, dtype=bool))
    normals = [H for H in all_subgroups(G) if _normal_in(G, H, full)]
    cur = normals[0]
    out = []
    while cur.order < G.order:
        nxt = min((N for N in normals if cur < N and not any(cur < M < N for M in normals)),
                  key=lambda N: N.order)
        out.append(nxt.order // cur.order)
        cur = nxt
    return sorted(out)
