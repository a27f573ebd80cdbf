"""Finite groups as Cayley tables.

Every group has elements ``0..n-1`` with the identity at index 0.  Products
follow the permutation convention used throughout the package: ``a * b``
means "apply ``a`` first, then ``b``".  Subgroups are boolean membership
masks over the parent's element indices.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    ClosureExceedsCap,
    InvalidParameter,
    InvalidPermutation,
    InvalidTable,
    NotHomomorphism,
    NotNormal,
    ProductExceedsCap,
)

DEFAULT_GROUP_CAP = int(os.environ.get("ULTRASOLV_GROUP_CAP", "20000"))
ASSOC_FULL_BOUND = 512
ASSOC_SAMPLES = 10_000
_CHUNK = 1024


def _index_dtype(n: int):
    return np.uint16 if n <= np.iinfo(np.uint16).max else np.int32


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def pi_part(n: int, pi: Iterable[int]) -> int:
    out = 1
    for p in set(pi):
        out *= p_part(n, p)
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, a)`` with ``n == p**a`` and ``a >= 1``, else None."""
    ps = prime_divisors(n)
    if len(ps) != 1:
        return None
    p = ps[0]
    return p, round(math.log(n, p))


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[a, b]`` is the index of ``a * b``.  Construction verifies the group
    axioms: identity at index 0, Latin-square rows and columns, and
    associativity (exhaustively up to ``assoc_bound`` elements, otherwise on
    ``ASSOC_SAMPLES`` seeded random triples).
    """

    def __init__(self, table, *, name: str | None = None, gens: Sequence[int] | None = None,
                 check: bool = True, assoc_bound: int = ASSOC_FULL_BOUND, seed: int = 0):
        table = np.asarray(table)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InvalidTable("table must be a non-empty square array")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise InvalidTable("table entries out of range")
        self.table = np.ascontiguousarray(table, dtype=_index_dtype(n))
        self.table.flags.writeable = False
        self.order = n
        self.name = name
        self._cache: dict = {}
        if check:
            self._check_axioms(assoc_bound, seed)
        self.inverse = self._inverses()
        self.element_order = self._element_orders()
        if np.any(n % self.element_order):
            raise InvalidTable("element order does not divide the group order")
        self._gens = tuple(int(g) for g in gens) if gens is not None else None

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} of order {self.order}>"

    def __len__(self):
        return self.order

    # construction checks

    def _check_axioms(self, assoc_bound: int, seed: int) -> None:
        T, n = self.table, self.order
        ar = np.arange(n)
        if not (np.array_equal(T[0], ar) and np.array_equal(T[:, 0], ar)):
            raise InvalidTable("index 0 is not a two-sided identity")
        for start in range(0, n, _CHUNK):
            rows = T[start:start + _CHUNK]
            cols = T[:, start:start + _CHUNK].T
            for block in (rows, cols):
                seen = np.zeros(block.shape, dtype=bool)
                seen[np.arange(block.shape[0])[:, None], block] = True
                if not seen.all():
                    raise InvalidTable("a row or column is not a permutation")
        if n <= assoc_bound:
            for a in range(n):
                if not np.array_equal(T[T[a]], T[a][T]):
                    raise InvalidTable(f"associativity fails for a = {a}")
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
            if not np.array_equal(T[T[a, b], c], T[a, T[b, c]]):
                raise InvalidTable("associativity fails on a sampled triple")

    def _inverses(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int64)
        for start in range(0, self.order, _CHUNK):
            rows, cols = np.nonzero(self.table[start:start + _CHUNK] == 0)
            inv[rows + start] = cols
        return inv

    def _element_orders(self) -> np.ndarray:
        n = self.order
        ar = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        cur = ar.copy()
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                return orders
            cur = self.table[cur, ar]
            k += 1

    # element arithmetic

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        k %= int(self.element_order[a])
        x = 0
        for _ in range(k):
            x = int(self.table[x, a])
        return x

    def powers(self, k: int) -> np.ndarray:
        """Array whose entry ``x`` is ``x**k``."""
        ar = np.arange(self.order)
        cur = np.zeros(self.order, dtype=np.int64)
        for _ in range(k):
            cur = self.table[cur, ar].astype(np.int64)
        return cur

    def commutator(self, a: int, b: int) -> int:
        """``a^-1 b^-1 a b``."""
        T, inv = self.table, self.inverse
        return int(T[T[inv[a], inv[b]], T[a, b]])

    def conjugation(self, g: int) -> np.ndarray:
        """Array mapping ``x`` to ``g^-1 x g``."""
        T = self.table
        return T[T[self.inverse[g]], g].astype(np.int64)

    @property
    def gens(self) -> tuple[int, ...]:
        """A small generating set (greedy by least index)."""
        if self._gens is None:
            self._gens = tuple(generate(self, range(self.order)).gens)
        return self._gens

    @property
    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            T = self.table
            self._cache["abelian"] = all(
                np.array_equal(T[g], T[:, g]) for g in self.gens)
        return self._cache["abelian"]

    def cached(self, key, compute):
        """Memoize a derived quantity; groups are immutable so this is safe."""
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]


class SubgroupMask:
    """Membership mask of a subgroup of ``parent``.

    The plain constructor trusts its caller; use :meth:`checked` for
    externally supplied masks.
    """

    __slots__ = ("parent", "members", "_gens", "_key", "_order")

    def __init__(self, parent: FiniteGroup, members, gens: Sequence[int] | None = None):
        members = np.asarray(members, dtype=bool)
        if members.shape != (parent.order,):
            raise InvalidParameter("mask length must equal the parent order")
        members.flags.writeable = False
        self.parent = parent
        self.members = members
        self._gens = tuple(int(g) for g in gens) if gens is not None else None
        self._key = None
        self._order = None

    @classmethod
    def checked(cls, parent: FiniteGroup, members) -> "SubgroupMask":
        members = np.asarray(members, dtype=bool)
        if not is_subgroup_mask(parent, members):
            raise InvalidParameter("mask is not a subgroup")
        return cls(parent, members)

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = int(self.members.sum())
        return self._order

    def __len__(self):
        return self.order

    @property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = np.packbits(self.members).tobytes()
        return self._key

    @property
    def gens(self) -> tuple[int, ...]:
        if self._gens is None:
            self._gens = generate(self.parent, self.elements).gens
        return self._gens

    @property
    def least_member(self) -> int:
        """Least non-identity member (0 for the trivial subgroup)."""
        el = self.elements
        return int(el[1]) if el.size > 1 else 0

    @property
    def sort_key(self) -> tuple[int, int]:
        return self.order, self.least_member

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_full(self) -> bool:
        return self.order == self.parent.order

    def __contains__(self, x) -> bool:
        return bool(self.members[x])

    def __le__(self, other: "SubgroupMask") -> bool:
        return not np.any(self.members & ~other.members)

    def __lt__(self, other: "SubgroupMask") -> bool:
        return self <= other and self.order < other.order

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubgroupMask) and other.parent is self.parent
                and other.key == self.key)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<SubgroupMask order {self.order} of {self.parent.order}>"


def is_subgroup_mask(G: FiniteGroup, members: np.ndarray) -> bool:
    """Brute-force subgroup test: identity, closure under products and inverses."""
    members = np.asarray(members, dtype=bool)
    if members.shape != (G.order,) or not members[0]:
        return False
    el = np.flatnonzero(members)
    if not members[G.inverse[el]].all():
        return False
    return bool(members[G.table[np.ix_(el, el)]].all())


def _close(G: FiniteGroup, mask: np.ndarray, old_gens: Sequence[int],
           new_gens: Sequence[int]) -> np.ndarray:
    # mask must already be closed under right multiplication by old_gens
    T = G.table
    mask = mask.copy()
    all_gens = list(old_gens) + list(new_gens)
    frontier = np.flatnonzero(mask)
    step_gens = list(new_gens)
    while frontier.size and step_gens:
        prods = np.unique(T[np.ix_(frontier, step_gens)])
        fresh = prods[~mask[prods]]
        if fresh.size == 0:
            break
        mask[fresh] = True
        frontier = fresh
        step_gens = all_gens
    return mask


def generate(G: FiniteGroup, elements: Iterable[int],
             base: SubgroupMask | None = None) -> SubgroupMask:
    """Subgroup generated by ``elements`` (together with ``base`` if given).

    Generators are kept only when they enlarge the subgroup, so the recorded
    generating set is small.
    """
    if base is None:
        mask = np.zeros(G.order, dtype=bool)
        mask[0] = True
        gens: list[int] = []
    else:
        mask = base.members.copy()
        gens = list(base.gens)
    for x in elements:
        x = int(x)
        if not mask[x]:
            mask = _close(G, mask, gens, [x])
            gens.append(x)
    return SubgroupMask(G, mask, gens)


def identity_mask(G: FiniteGroup) -> SubgroupMask:
    m = np.zeros(G.order, dtype=bool)
    m[0] = True
    return SubgroupMask(G, m, ())


def full_mask(G: FiniteGroup) -> SubgroupMask:
    return SubgroupMask(G, np.ones(G.order, dtype=bool), G.gens)


def mask_of(G: FiniteGroup, elements: Iterable[int]) -> np.ndarray:
    m = np.zeros(G.order, dtype=bool)
    m[list(elements)] = True
    return m


def is_normal(G: FiniteGroup, H: SubgroupMask, within: SubgroupMask | None = None) -> bool:
    """Whether ``H`` is normalized by ``within`` (default: all of ``G``)."""
    gens = G.gens if within is None else within.gens
    el = H.elements
    T, inv = G.table, G.inverse
    for g in gens:
        if not H.members[T[T[inv[g], el], g]].all():
            return False
    return True


def conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    """Partition of the elements into classes, each sorted, ordered by least member."""
    return [list(c) for c in G.cached("classes", lambda: _classes(G))]


def _classes(G: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    n = G.order
    gens = G.gens
    if not gens:
        return ((0,),)
    src = np.tile(np.arange(n), len(gens))
    dst = np.concatenate([G.conjugation(g) for g in gens])
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    groups: dict[int, list[int]] = {}
    for x, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(x)
    return tuple(sorted((tuple(c) for c in groups.values()), key=lambda c: c[0]))


def class_sizes(G: FiniteGroup) -> np.ndarray:
    """Array giving the conjugacy-class size of every element."""
    def compute():
        sizes = np.empty(G.order, dtype=np.int64)
        for c in conjugacy_classes(G):
            sizes[c] = len(c)
        return sizes
    return G.cached("class_sizes", compute)


def center(G: FiniteGroup) -> SubgroupMask:
    def compute():
        T = G.table
        m = np.ones(G.order, dtype=bool)
        for g in G.gens:
            m &= T[:, g] == T[g]
        return SubgroupMask(G, m)
    return G.cached("center", compute)


def derived_subgroup(G: FiniteGroup) -> SubgroupMask:
    """Normal closure of the commutators of a generating set."""
    def compute():
        gens = G.gens
        comms = [G.commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
        return normal_closure(G, comms)
    return G.cached("derived", compute)


def normal_closure(G: FiniteGroup, seed: Iterable[int]) -> SubgroupMask:
    """Least normal subgroup containing ``seed``.

    Generated by the conjugacy classes meeting the seed; such a subgroup is a
    union of classes and hence normal.
    """
    seed = {int(x) for x in seed}
    seed.discard(0)
    if not seed:
        return identity_mask(G)
    cls_of = _class_index(G)
    classes = G.cached("classes", lambda: _classes(G))
    elems: list[int] = []
    for c in sorted({int(cls_of[x]) for x in seed}):
        elems.extend(classes[c])
    return generate(G, elems)


def _class_index(G: FiniteGroup) -> np.ndarray:
    def compute():
        idx = np.empty(G.order, dtype=np.int64)
        for i, c in enumerate(G.cached("classes", lambda: _classes(G))):
            idx[list(c)] = i
        return idx
    return G.cached("class_index", compute)


def exponent(G: FiniteGroup) -> int:
    return math.lcm(*(int(o) for o in np.unique(G.element_order)))


@dataclass(frozen=True, eq=False)
class GroupMap:
    """A total map between groups, stored as its image array."""

    source: FiniteGroup
    target: FiniteGroup
    images: np.ndarray

    def __post_init__(self):
        imgs = np.asarray(self.images, dtype=np.int64)
        if imgs.shape != (self.source.order,):
            raise InvalidParameter("image array length must equal the source order")
        if imgs.size and (imgs.min() < 0 or imgs.max() >= self.target.order):
            raise InvalidParameter("image out of range")
        imgs.flags.writeable = False
        object.__setattr__(self, "images", imgs)

    @classmethod
    def checked(cls, source, target, images) -> "GroupMap":
        m = cls(source, target, images)
        if not m.is_homomorphism():
            raise NotHomomorphism("map is not a homomorphism")
        return m

    @classmethod
    def identity(cls, G: FiniteGroup) -> "GroupMap":
        return cls(G, G, np.arange(G.order))

    @classmethod
    def trivial(cls, source: FiniteGroup, target: FiniteGroup) -> "GroupMap":
        return cls(source, target, np.zeros(source.order, dtype=np.int64))

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def is_homomorphism(self) -> bool:
        if self.images[0] != 0:
            return False
        S, T = self.source.table, self.target.table
        img = self.images
        for start in range(0, self.source.order, _CHUNK):
            rows = S[start:start + _CHUNK]
            if not np.array_equal(img[rows], T[img[start:start + _CHUNK, None], img[None, :]]):
                return False
        return True

    def is_bijective(self) -> bool:
        return (self.source.order == self.target.order
                and np.unique(self.images).size == self.source.order)

    def is_automorphism(self) -> bool:
        return self.source is self.target and self.is_bijective() and self.is_homomorphism()

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.source.order)))

    def then(self, other: "GroupMap") -> "GroupMap":
        """Composite map: apply ``self`` first, then ``other``."""
        return GroupMap(self.source, other.target, other.images[self.images])

    def inverse(self) -> "GroupMap":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.source.order)
        return GroupMap(self.target, self.source, inv)

    def image(self, H: SubgroupMask | None = None) -> SubgroupMask:
        el = self.images if H is None else self.images[H.elements]
        return generate(self.target, np.unique(el))

    def kernel(self) -> SubgroupMask:
        return SubgroupMask(self.source, self.images == 0)

    @property
    def key(self) -> bytes:
        return self.images.tobytes()


def quotient(G: FiniteGroup, N: SubgroupMask) -> tuple[FiniteGroup, GroupMap]:
    """Quotient by a normal subgroup, with the projection map.

    Cosets are represented by their least member; cosets are indexed in
    increasing order of representative, so the identity coset is 0.
    """
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    T = G.table
    nel = N.elements
    rep_of = np.empty(G.order, dtype=np.int64)
    for start in range(0, G.order, _CHUNK):
        rep_of[start:start + _CHUNK] = T[start:start + _CHUNK][:, nel].min(axis=1)
    reps = np.unique(rep_of)
    label = np.full(G.order, -1, dtype=np.int64)
    label[reps] = np.arange(reps.size)
    proj = label[rep_of]
    m = reps.size
    table = np.empty((m, m), dtype=_index_dtype(m))
    for start in range(0, m, _CHUNK):
        table[start:start + _CHUNK] = proj[T[np.ix_(reps[start:start + _CHUNK], reps)]]
    gens = sorted({int(proj[g]) for g in G.gens} - {0})
    Q = FiniteGroup(table, gens=gens or None)
    return Q, GroupMap(G, Q, proj)


def preimage(proj: GroupMap, K: SubgroupMask) -> SubgroupMask:
    return SubgroupMask(proj.source, K.members[proj.images])


def subgroup_as_group(H: SubgroupMask) -> tuple[FiniteGroup, np.ndarray]:
    """``H`` as a group in its own right.

    Elements keep their relative order from the parent; returns the group and
    the embedding array (new index -> parent index).
    """
    G = H.parent
    el = H.elements
    rank = np.full(G.order, -1, dtype=np.int64)
    rank[el] = np.arange(el.size)
    table = rank[G.table[np.ix_(el, el)]]
    gens = [int(rank[g]) for g in H.gens]
    return FiniteGroup(table, gens=gens), el


# permutation groups


@dataclass(frozen=True)
class PermSpec:
    """Permutation generators given as 0-based image arrays."""

    degree: int
    generators: tuple[tuple[int, ...], ...]

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = ()):
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "generators", tuple(tuple(int(x) for x in g) for g in generators))


class _RowIndexer:
    """Exact lookup of permutation rows by their images of a separating base."""

    def __init__(self, rows: np.ndarray):
        rows = np.asarray(rows, dtype=np.int64)
        n, d = rows.shape
        self.d = max(d, 1)
        base: list[int] = []
        distinct = 1
        for pt in range(d):
            if distinct == n:
                break
            cand = base + [pt]
            k = np.unique(rows[:, cand], axis=0).shape[0]
            if k > distinct:
                base, distinct = cand, k
        if distinct != n:
            raise InvalidParameter("rows are not distinct")
        self.base = np.array(base, dtype=np.int64)
        self.weights = self.d ** np.arange(len(base), dtype=np.int64)
        keys = rows[:, self.base] @ self.weights if base else np.zeros(n, dtype=np.int64)
        span = self.d ** len(base)
        if span <= 1 << 24:
            self.direct = np.full(span, -1, dtype=np.int64)
            self.direct[keys] = np.arange(n)
        else:
            self.direct = None
            self.order = np.argsort(keys)
            self.sorted_keys = keys[self.order]

    def lookup_base_images(self, base_images: np.ndarray) -> np.ndarray:
        keys = base_images @ self.weights if self.base.size else np.zeros(len(base_images), np.int64)
        if self.direct is not None:
            idx = self.direct[keys]
        else:
            pos = np.searchsorted(self.sorted_keys, keys)
            pos = np.minimum(pos, self.sorted_keys.size - 1)
            idx = np.where(self.sorted_keys[pos] == keys, self.order[pos], -1)
        if np.any(idx < 0):
            raise InvalidParameter("product left the element set")
        return idx


def table_from_permutations(elems: np.ndarray) -> np.ndarray:
    """Cayley table of a closed set of permutations, rows indexed like ``elems``.

    Product ``a * b`` applies ``a`` first: ``(a*b)[x] = b[a[x]]``.
    """
    elems = np.asarray(elems, dtype=np.int64)
    n = elems.shape[0]
    idx = _RowIndexer(elems)
    table = np.empty((n, n), dtype=_index_dtype(n))
    base = idx.base

    def row(h: int) -> np.ndarray:
        return idx.lookup_base_images(elems[:, elems[h, base]])

    # row h*c is row h gathered at row c, so only the rows of a generating
    # set need lookups; the rest follow a spanning tree
    table[0] = np.arange(n)
    known = np.zeros(n, dtype=bool)
    known[0] = True
    gens: list[np.ndarray] = []
    while not known.all():
        h = int(np.flatnonzero(~known)[0])
        gens.append(row(h))
        table[h] = gens[-1]
        known[h] = True
        queue = deque(np.flatnonzero(known).tolist())
        while queue:
            c = queue.popleft()
            for r in gens:
                # r[c] is the index of h*c
                b = int(r[c])
                if not known[b]:
                    table[b] = r[table[c]]
                    known[b] = True
                    queue.append(b)
    return table


def _check_perm(g: Sequence[int], degree: int) -> np.ndarray:
    arr = np.asarray(g, dtype=np.int64)
    if arr.shape != (degree,) or sorted(arr.tolist()) != list(range(degree)):
        raise InvalidPermutation(f"not a permutation of 0..{degree - 1}: {list(g)}")
    return arr


def permutation_closure(spec: PermSpec, cap: int = DEFAULT_GROUP_CAP) -> tuple[np.ndarray, list[int]]:
    """Elements of the group generated by ``spec`` and the generator indices.

    Elements are listed in breadth-first discovery order from the identity,
    extending each element by the generators in list order.
    """
    d = spec.degree
    if d < 1:
        raise InvalidParameter("degree must be positive")
    gens = [_check_perm(g, d) for g in spec.generators]
    ident = tuple(range(d))
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        cur = np.array(elems[i])
        for g in gens:
            new = tuple(g[cur].tolist())
            if new not in index:
                if len(elems) >= cap:
                    raise ClosureExceedsCap(cap)
                index[new] = len(elems)
                elems.append(new)
        i += 1
    gen_idx: list[int] = []
    for g in gens:
        j = index[tuple(g.tolist())]
        if j and j not in gen_idx:
            gen_idx.append(j)
    return np.array(elems, dtype=np.int64), gen_idx


def from_generators(spec: PermSpec, cap: int = DEFAULT_GROUP_CAP, *,
                    name: str | None = None) -> FiniteGroup:
    """Group generated by permutations, indexed as in ``permutation_closure``."""
    elems, gen_idx = permutation_closure(spec, cap)
    return FiniteGroup(table_from_permutations(elems), name=name, gens=gen_idx)


def cycles_to_images(cycles: Sequence[Sequence[int]], degree: int) -> tuple[int, ...]:
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a] = b
    return tuple(img)


def symmetric_spec(n: int) -> PermSpec:
    if n < 1:
        raise InvalidParameter("degree must be positive")
    if n == 1:
        return PermSpec(1, [])
    return PermSpec(n, [cycles_to_images([(0, 1)], n), cycles_to_images([tuple(range(n))], n)])


def alternating_spec(n: int) -> PermSpec:
    if n < 1:
        raise InvalidParameter("degree must be positive")
    return PermSpec(n, [cycles_to_images([(i, i + 1, i + 2)], n) for i in range(n - 2)])


def symmetric(n: int) -> FiniteGroup:
    return from_generators(symmetric_spec(n), name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    return from_generators(alternating_spec(n), name=f"A{n}")


# named groups


def cyclic(n: int) -> FiniteGroup:
    """Cyclic group; element ``k`` is the ``k``-th power of the generator 1."""
    if n < 1:
        raise InvalidParameter("n must be positive")
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, name=f"C{n}",
                       gens=[1] if n > 1 else [])


def dihedral(m: int) -> FiniteGroup:
    """Dihedral group of order ``2m``; index ``i + m*j`` is ``r^i s^j``."""
    if m < 1:
        raise InvalidParameter("m must be positive")
    i = np.arange(2 * m) % m
    j = np.arange(2 * m) // m
    sign = 1 - 2 * j[:, None]
    rot = (i[:, None] + sign * i[None, :]) % m
    ref = (j[:, None] + j[None, :]) % 2
    gens = [x for x in (1 % m, m) if x]
    return FiniteGroup(rot + m * ref, name=f"D{2 * m}", gens=gens)


def quaternion8() -> FiniteGroup:
    """Q8 indexed 1, -1, i, -i, j, -j, k, -k."""
    # unit products among 1, i, j, k as (unit, sign)
    unit = [[(0, 1), (1, 1), (2, 1), (3, 1)],
            [(1, 1), (0, -1), (3, 1), (2, -1)],
            [(2, 1), (3, -1), (0, -1), (1, 1)],
            [(3, 1), (2, 1), (1, -1), (0, -1)]]
    table = np.empty((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            u, s = unit[a // 2][b // 2]
            s *= (-1) ** (a % 2 + b % 2)
            table[a, b] = 2 * u + (s < 0)
    return FiniteGroup(table, name="Q8", gens=[2, 4])


def direct_product(G: FiniteGroup, H: FiniteGroup, cap: int = DEFAULT_GROUP_CAP) -> FiniteGroup:
    """``G x H`` with pair ``(g, h)`` at index ``g*|H| + h``."""
    n, m = G.order, H.order
    if n * m > cap:
        raise ProductExceedsCap(n * m, cap)
    tg = G.table.astype(np.int64)
    th = H.table.astype(np.int64)
    table = (tg[:, None, :, None] * m + th[None, :, None, :]).reshape(n * m, n * m)
    gens = [g * m for g in G.gens] + list(H.gens)
    name = f"{G.name} x {H.name}" if G.name and H.name else None
    return FiniteGroup(table, name=name, gens=gens)


def abelian_of_type(orders: Sequence[int]) -> FiniteGroup:
    """Direct product of cyclic groups of the given prime-power orders, in order."""
    for q in orders:
        if q < 2 or prime_power(q) is None:
            raise InvalidParameter(f"{q} is not a prime power")
    G = cyclic(1)
    for q in orders:
        G = direct_product(G, cyclic(q)) if G.order > 1 else cyclic(q)
    G.name = " x ".join(f"C{q}" for q in orders) or "C1"
    return G


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    if not is_prime(p):
        raise InvalidParameter(f"{p} is not prime")
    if k < 0:
        raise InvalidParameter("rank must be non-negative")
    return abelian_of_type([p] * k)


def klein_four() -> FiniteGroup:
    G = abelian_of_type([2, 2])
    G.name = "V4"
    return G
