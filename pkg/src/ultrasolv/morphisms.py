"""Homomorphism search: automorphisms, endomorphisms, and groups of maps.

All searches assign images to an ordered generating list ``g_0, ..., g_{k-1}``
of the source group.  Level ``i`` fixes the image of ``g_i`` and extends the
partial map to ``S_i = <g_0, ..., g_i>`` along breadth-first words; the
extension is accepted only if ``phi(a g_j) = phi(a) phi(g_j)`` holds for every
``a`` in ``S_i`` and ``j <= i``, which makes ``phi`` a homomorphism on ``S_i``.
Candidates are tried in increasing index order, so results come out in
lexicographic order of generator-image tuples.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .core import (
    FiniteGroup,
    GroupMap,
    SubgroupMask,
    center,
    class_sizes,
    derived_subgroup,
    exponent,
    generate,
    identity_mask,
    prime_divisors,
    subgroup_as_group,
    table_from_permutations,
)
from .errors import AutCapExceeded, EndCapExceeded, InvalidParameter, NotCentral, NotHomomorphism

DEFAULT_AUT_CAP = int(os.environ.get("ULTRASOLV_AUT_CAP", "20000"))
DEFAULT_END_CAP = int(os.environ.get("ULTRASOLV_END_CAP", "200000"))

AUTOMORPHISMS = "automorphisms"
ENDOMORPHISMS = "endomorphisms"


@dataclass(eq=False)
class MapSet:
    """Maps of one kind over a common group.

    ``complete`` means the list is every map of that kind; otherwise it is a
    generating set (automorphisms) or a set whose forward closure reproduces
    all endomorphic images (endomorphisms).  ``order`` is the size of the
    generated group when known.
    """

    group: FiniteGroup
    maps: list[GroupMap]
    kind: str = AUTOMORPHISMS
    complete: bool = True
    order: int | None = None
    _stack: np.ndarray | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    @property
    def images(self) -> np.ndarray:
        """All image arrays stacked into a ``(len, |G|)`` array."""
        if self._stack is None:
            if self.maps:
                self._stack = np.stack([m.images for m in self.maps])
            else:
                self._stack = np.arange(self.group.order)[None, :]
        return self._stack

    def closure(self, elements) -> np.ndarray:
        """Mask of the least superset of ``elements`` closed under every map."""
        M = self.images
        mask = np.zeros(self.group.order, dtype=bool)
        frontier = np.unique(np.asarray(list(elements), dtype=np.int64))
        mask[frontier] = True
        while frontier.size:
            imgs = np.unique(M[:, frontier])
            frontier = imgs[~mask[imgs]]
            mask[frontier] = True
        return mask


def orbit_closure(x: int, maps: MapSet) -> list[int]:
    """Forward closure of ``{x}`` under the maps (an orbit for automorphisms)."""
    return np.flatnonzero(maps.closure([x])).tolist()


def minimal_generating_set(G: FiniteGroup) -> list[int]:
    """Greedy generating set, made minimal for nilpotent groups.

    Repeatedly adds the least element whose inclusion generates the largest
    subgroup.  For nilpotent groups a longer-than-necessary result is replaced
    by a Burnside basis built from the Sylow subgroups.
    """
    return list(G.cached("mingens", lambda: _minimal_generating_set(G)))


def _minimal_generating_set(G: FiniteGroup) -> tuple[int, ...]:
    H = identity_mask(G)
    gens: list[int] = []
    while not H.is_full():
        best_x, best = -1, None
        for x in np.flatnonzero(~H.members):
            K = generate(G, [int(x)], base=H)
            if best is None or K.order > best.order:
                best_x, best = int(x), K
                if K.is_full():
                    break
        gens.append(best_x)
        H = best
    if len(gens) > 1:
        basis = _nilpotent_basis(G)
        if basis is not None and len(basis) < len(gens):
            return tuple(basis)
    return tuple(gens)


def _nilpotent_basis(G: FiniteGroup) -> list[int] | None:
    from .structure import frattini_pgroup, sylow_if_normal

    per_prime = []
    for p in prime_divisors(G.order):
        P = sylow_if_normal(G, p)
        if P is None:
            return None
        PG, emb = subgroup_as_group(P)
        phi = frattini_pgroup(PG, p)
        cur, basis = phi, []
        for x in range(PG.order):
            if x not in cur:
                basis.append(int(emb[x]))
                cur = generate(PG, [x], base=cur)
        per_prime.append(basis)
    d = max(len(b) for b in per_prime)
    out = []
    for i in range(d):
        x = 0
        for basis in per_prime:
            if i < len(basis):
                x = int(G.table[x, basis[i]])
        out.append(x)
    return out


class _Levels:
    """Breadth-first word structure of a source group for a generator list."""

    def __init__(self, G: FiniteGroup, gens: Sequence[int]):
        self.G = G
        self.gens = np.array(gens, dtype=np.int64)
        T = G.table
        seen = np.zeros(G.order, dtype=bool)
        seen[0] = True
        members = np.array([0], dtype=np.int64)
        self.layers: list[list[tuple[np.ndarray, np.ndarray, np.ndarray]]] = []
        self.new: list[np.ndarray] = []
        self.checks: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
        self.redundant: list[bool] = []
        for i in range(len(gens)):
            gi = self.gens[: i + 1]
            self.redundant.append(bool(seen[gens[i]]))
            layers = []
            frontier = members
            while frontier.size:
                prods = T[np.ix_(frontier, gi)].astype(np.int64).ravel()
                parents = np.repeat(frontier, gi.size)
                labels = np.tile(np.arange(gi.size), frontier.size)
                uniq, first = np.unique(prods, return_index=True)
                keep = ~seen[uniq]
                first = np.sort(first[keep])
                if first.size == 0:
                    break
                elems = prods[first]
                seen[elems] = True
                layers.append((elems, parents[first], labels[first]))
                frontier = elems
            new = (np.concatenate([l[0] for l in layers]) if layers
                   else np.zeros(0, dtype=np.int64))
            a = np.concatenate([np.repeat(new, i + 1), members])
            j = np.concatenate([np.tile(np.arange(i + 1), new.size),
                                np.full(members.size, i)])
            self.checks.append((a, j, T[a, self.gens[j]].astype(np.int64)))
            self.layers.append(layers)
            self.new.append(new)
            members = np.concatenate([members, new])
        self.members = members
        if members.size != G.order:
            raise InvalidParameter("generator list does not generate the group")


def _search(levels: _Levels, target: FiniteGroup, candidates: list[np.ndarray],
            injective: bool) -> Iterator[np.ndarray]:
    """Yield image arrays of all homomorphisms consistent with the candidate lists."""
    Tt = target.table
    k = len(levels.gens)
    img = np.zeros(levels.G.order, dtype=np.int64)
    gimg = np.zeros(k, dtype=np.int64)
    used = np.zeros(target.order, dtype=bool) if injective else None

    def assign(i: int, c: int) -> bool:
        gimg[i] = c
        if levels.redundant[i]:
            if img[levels.gens[i]] != c:
                return False
        for elems, parents, labels in levels.layers[i]:
            img[elems] = Tt[img[parents], gimg[labels]]
        a, j, prod = levels.checks[i]
        if not np.array_equal(img[prod], Tt[img[a], gimg[j]]):
            return False
        if injective:
            new_imgs = img[levels.new[i]]
            if np.any(new_imgs == 0) or np.any(used[new_imgs]):
                return False
            if np.unique(new_imgs).size != new_imgs.size:
                return False
        return True

    def rec(i: int):
        if i == k:
            yield img.copy()
            return
        for c in candidates[i]:
            if injective and used[c] and not levels.redundant[i]:
                continue
            if assign(i, int(c)):
                if injective:
                    used[img[levels.new[i]]] = True
                yield from rec(i + 1)
                if injective:
                    used[img[levels.new[i]]] = False

    if injective:
        used[0] = True
    yield from rec(0)


def _auto_candidates(G: FiniteGroup, gens: Sequence[int]) -> list[np.ndarray]:
    orders = G.element_order
    sizes = class_sizes(G)
    return [np.flatnonzero((orders == orders[g]) & (sizes == sizes[g])) for g in gens]


def _hom_candidates(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int]) -> list[np.ndarray]:
    return [np.flatnonzero(G.element_order[g] % H.element_order == 0) for g in gens]


def enumerate_automorphisms(G: FiniteGroup, cap: int = DEFAULT_AUT_CAP) -> MapSet:
    """Every automorphism of ``G``; raises AutCapExceeded past ``cap``."""
    if cap < 1:
        raise InvalidParameter("cap must be positive")
    gens = minimal_generating_set(G)
    levels = _Levels(G, gens)
    maps = []
    for img in _search(levels, G, _auto_candidates(G, gens), injective=True):
        m = GroupMap(G, G, img)
        if not (m.is_bijective() and m.is_homomorphism()):
            raise NotHomomorphism("search produced an invalid automorphism")
        maps.append(m)
        if len(maps) > cap:
            raise AutCapExceeded(len(maps), cap)
    return MapSet(G, maps, AUTOMORPHISMS, complete=True, order=len(maps))


def enumerate_endomorphisms(G: FiniteGroup, cap: int = DEFAULT_END_CAP) -> MapSet:
    """Every endomorphism of ``G``; raises EndCapExceeded past ``cap``."""
    if cap < 1:
        raise InvalidParameter("cap must be positive")
    gens = minimal_generating_set(G)
    levels = _Levels(G, gens)
    maps = []
    for img in _search(levels, G, _hom_candidates(G, G, gens), injective=False):
        maps.append(GroupMap(G, G, img))
        if len(maps) > cap:
            raise EndCapExceeded(len(maps), cap)
    return MapSet(G, maps, ENDOMORPHISMS, complete=True, order=len(maps))


def enumerate_homomorphisms(G: FiniteGroup, H: FiniteGroup, cap: int = DEFAULT_END_CAP) -> list[GroupMap]:
    """Every homomorphism ``G -> H``."""
    gens = minimal_generating_set(G)
    out = []
    for img in _search(_Levels(G, gens), H, _hom_candidates(G, H, gens), injective=False):
        out.append(GroupMap(G, H, img))
        if len(out) > cap:
            raise EndCapExceeded(len(out), cap)
    return out


def find_homomorphism(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int],
                      fixed: dict[int, int], injective: bool = False) -> GroupMap | None:
    """First homomorphism ``G -> H`` sending ``gens[i]`` to ``fixed[i]`` where given."""
    levels = _Levels(G, gens)
    cands = (_auto_candidates(G, gens) if injective and H is G
             else _hom_candidates(G, H, gens))
    for i, c in fixed.items():
        cands[i] = np.array([c], dtype=np.int64)
    for img in _search(levels, H, cands, injective=injective):
        return GroupMap(G, H, img)
    return None


def automorphism_generators(G: FiniteGroup) -> MapSet:
    """Generating set and exact order of Aut(G) without listing it.

    Works down a stabilizer chain: ``A_i`` fixes ``g_0..g_{i-1}``.  For each
    level, from the last generator back to the first, the orbit of ``g_i``
    under ``A_i`` is grown from the generators found so far; any remaining
    candidate image is tested by a search for one automorphism of ``A_i``
    realizing it.  ``|Aut(G)|`` is the product of the orbit lengths.
    """
    return G.cached("autgens", lambda: _automorphism_generators(G))


def _automorphism_generators(G: FiniteGroup) -> MapSet:
    gens = minimal_generating_set(G)
    k = len(gens)
    levels = _Levels(G, gens)
    base_cands = _auto_candidates(G, gens)
    found: list[tuple[int, GroupMap]] = []
    order = 1
    for i in reversed(range(k)):
        stab = MapSet(G, [m for lvl, m in found if lvl >= i], complete=False)
        orbit = stab.closure([gens[i]]) if stab.maps else _single(G.order, gens[i])
        for c in base_cands[i]:
            if orbit[c]:
                continue
            cands = list(base_cands)
            for j in range(i):
                cands[j] = np.array([gens[j]], dtype=np.int64)
            cands[i] = np.array([c], dtype=np.int64)
            hit = next(_search(levels, G, cands, injective=True), None)
            if hit is not None:
                found.append((i, GroupMap(G, G, hit)))
                stab = MapSet(G, [m for lvl, m in found if lvl >= i], complete=False)
                orbit = stab.closure([gens[i]])
        order *= int(orbit.sum())
    maps = [m for _, m in found]
    return MapSet(G, maps, AUTOMORPHISMS, complete=False, order=order)


def _single(n: int, x: int) -> np.ndarray:
    m = np.zeros(n, dtype=bool)
    m[x] = True
    return m


def automorphism_order(G: FiniteGroup) -> int:
    return automorphism_generators(G).order


def _verbal_subgroups(G: FiniteGroup) -> list[SubgroupMask]:
    # fully invariant: derived subgroup and power subgroups
    out = [derived_subgroup(G)]
    e = exponent(G)
    for m in range(2, e):
        if e % m == 0:
            out.append(generate(G, np.unique(G.powers(m))))
    return out


def _generating_list_from(G: FiniteGroup, x: int) -> list[int]:
    H = generate(G, [x])
    gens = [x] if x else []
    while not H.is_full():
        best_y, best = -1, None
        for y in np.flatnonzero(~H.members):
            K = generate(G, [int(y)], base=H)
            if best is None or K.order > best.order:
                best_y, best = int(y), K
                if K.is_full():
                    break
        gens.append(best_y)
        H = best
    return gens


def endomorphism_witnesses(G: FiniteGroup) -> MapSet:
    """Endomorphisms whose forward closure realizes every endomorphic image.

    The result (Aut(G) generators, the trivial map, plus witnesses) satisfies
    ``closure({x}) == {phi(x) : phi in End(G)}`` for every ``x``.  Images are
    unions of Aut-orbits; for each orbit pair not yet connected a search is
    run for an endomorphism mapping one representative to the other, after
    discarding pairs ruled out by element orders or fully invariant subgroups.
    """
    return G.cached("endwit", lambda: _endomorphism_witnesses(G))


def _endomorphism_witnesses(G: FiniteGroup) -> MapSet:
    auts = automorphism_generators(G)
    maps = list(auts.maps) + [GroupMap.trivial(G, G)]
    orbit_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if orbit_of[x] < 0:
            orb = auts.closure([x]) if auts.maps else _single(G.order, x)
            orbit_of[orb] = len(reps)
            reps.append(x)
    verbal = _verbal_subgroups(G)
    orders = G.element_order
    for x in reps[1:]:
        reach = MapSet(G, maps, ENDOMORPHISMS, complete=False).closure([x])
        gens = None
        for y in reps[1:]:
            if reach[y] or orders[x] % orders[y]:
                continue
            if any(x in F and y not in F for F in verbal):
                continue
            if gens is None:
                gens = _generating_list_from(G, x)
            phi = find_homomorphism(G, G, gens, {0: y})
            if phi is not None:
                maps.append(phi)
                reach = MapSet(G, maps, ENDOMORPHISMS, complete=False).closure([x])
    return MapSet(G, maps, ENDOMORPHISMS, complete=False)


def endomorphism_images(G: FiniteGroup, x: int) -> list[int]:
    """``{phi(x) : phi in End(G)}``."""
    return np.flatnonzero(endomorphism_witnesses(G).closure([x])).tolist()


def inner_automorphisms(G: FiniteGroup) -> MapSet:
    """Conjugation maps ``x -> g^-1 x g``, deduplicated, identity first."""
    seen = set()
    maps = []
    for g in range(G.order):
        m = GroupMap(G, G, G.conjugation(g))
        if m.key not in seen:
            seen.add(m.key)
            maps.append(m)
    return MapSet(G, maps, AUTOMORPHISMS, complete=True, order=len(maps))


def aut_as_group(autos: MapSet, cap: int | None = None) -> tuple[FiniteGroup, np.ndarray]:
    """Abstract group of a complete automorphism set under composition.

    The product of elements ``a`` and ``b`` is "apply ``a`` first, then ``b``".
    Index 0 is the identity map; the others follow the order of ``autos``.
    Returns the group and ``position`` with ``position[i]`` the element index
    of ``autos.maps[i]``.
    """
    from .core import DEFAULT_GROUP_CAP
    from .errors import ProductExceedsCap

    if not autos.complete or autos.kind != AUTOMORPHISMS:
        raise InvalidParameter("aut_as_group needs a complete automorphism set")
    cap = DEFAULT_GROUP_CAP if cap is None else cap
    m = len(autos.maps)
    if m > cap:
        raise ProductExceedsCap(m, cap)
    G = autos.group
    ident = np.arange(G.order)
    id_pos = next((i for i, a in enumerate(autos.maps) if np.array_equal(a.images, ident)), None)
    if id_pos is None:
        raise InvalidParameter("automorphism set lacks the identity")
    order = [id_pos] + [i for i in range(m) if i != id_pos]
    position = np.empty(m, dtype=np.int64)
    position[order] = np.arange(m)
    elems = autos.images[order]
    table = table_from_permutations(elems)
    gens = None
    if G.order > 1:
        chain = automorphism_generators(G)
        lookup = {a.key: int(position[i]) for i, a in enumerate(autos.maps)}
        gens = [lookup[g.key] for g in chain.maps]
    return FiniteGroup(table, gens=gens), position


def maps_as_group(maps: Sequence[GroupMap], cap: int | None = None) -> FiniteGroup:
    """Group generated by automorphisms, as an abstract group (identity at 0)."""
    from .core import DEFAULT_GROUP_CAP, PermSpec, from_generators

    if not maps:
        return FiniteGroup(np.zeros((1, 1), dtype=np.int64))
    G = maps[0].source
    spec = PermSpec(G.order, [m.images.tolist() for m in maps])
    return from_generators(spec, DEFAULT_GROUP_CAP if cap is None else cap)


# the factor-twisting automorphism of a direct product


def factor_masks(G: FiniteGroup, n_first: int, n_second: int) -> tuple[SubgroupMask, SubgroupMask]:
    """Masks of the two factors of ``direct_product`` with the given factor orders."""
    if G.order != n_first * n_second:
        raise InvalidParameter("factor orders do not match the product")
    first = np.zeros(G.order, dtype=bool)
    first[np.arange(n_first) * n_second] = True
    second = np.zeros(G.order, dtype=bool)
    second[:n_second] = True
    return SubgroupMask(G, first), SubgroupMask(G, second)


def psi_factory(G: FiniteGroup, phi: GroupMap) -> GroupMap:
    """The automorphism ``(a, b) -> (a, phi(a) b)`` of ``G = A x B``.

    ``phi`` maps the first factor ``A`` into the centre of the second
    factor ``B``; ``G`` must use the pair indexing of ``direct_product``.
    """
    A, B = phi.source, phi.target
    if G.order != A.order * B.order:
        raise InvalidParameter("G is not the product of phi's source and target")
    if not phi.is_homomorphism():
        raise NotHomomorphism("phi is not a homomorphism")
    if not np.all(center(B).members[phi.images]):
        raise NotCentral("phi does not land in the centre of the second factor")
    m = B.order
    a = np.arange(G.order) // m
    b = np.arange(G.order) % m
    images = a * m + B.table[phi.images[a], b].astype(np.int64)
    return GroupMap(G, G, images)


def map_order(alpha: GroupMap) -> int:
    """Order of an automorphism under composition."""
    ident = np.arange(alpha.source.order)
    cur, k = alpha.images, 1
    while not np.array_equal(cur, ident):
        cur = alpha.images[cur]
        k += 1
    return k
