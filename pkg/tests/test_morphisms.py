import math

import numpy as np
import pytest

from ultrasolv.core import (
    GroupMap,
    center,
    class_sizes,
    conjugacy_classes,
    cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    from_generators,
    klein_four,
    quaternion8,
    symmetric,
    symmetric_spec,
)
from ultrasolv.errors import AutCapExceeded, EndCapExceeded, InvalidParameter, NotCentral
from ultrasolv.morphisms import (
    ENDOMORPHISMS,
    MapSet,
    aut_as_group,
    automorphism_generators,
    automorphism_order,
    endomorphism_images,
    endomorphism_witnesses,
    enumerate_automorphisms,
    enumerate_endomorphisms,
    enumerate_homomorphisms,
    factor_masks,
    inner_automorphisms,
    map_order,
    maps_as_group,
    minimal_generating_set,
    orbit_closure,
    psi_factory,
)

from oracles import automorphisms, homomorphisms

SMALL = [cyclic(1), cyclic(6), klein_four(), dihedral(4), quaternion8(), symmetric(3),
         direct_product(cyclic(2), cyclic(4)), dihedral(6), symmetric(4)]


def keyset(arrays):
    return {np.asarray(a).tobytes() for a in arrays}


class TestGeneratingSet:
    def test_cyclic_needs_one(self):
        assert len(minimal_generating_set(cyclic(5))) == 1

    def test_klein_and_d8_need_two(self):
        assert len(minimal_generating_set(klein_four())) == 2
        assert len(minimal_generating_set(dihedral(4))) == 2

    def test_trivial_group(self):
        assert minimal_generating_set(cyclic(1)) == []

    def test_nilpotent_result_is_minimal(self):
        # C2 x C4 x C3 is 2-generated even though the greedy pass may take 3
        G = direct_product(direct_product(cyclic(2), cyclic(4)), cyclic(3))
        assert len(minimal_generating_set(G)) == 2


class TestAutomorphisms:
    def test_known_sizes(self):
        assert len(enumerate_automorphisms(klein_four())) == 6
        assert len(enumerate_automorphisms(direct_product(cyclic(6), cyclic(2)))) == 12
        assert len(enumerate_automorphisms(cyclic(1))) == 1
        assert len(enumerate_automorphisms(quaternion8())) == 24

    def test_cap(self):
        with pytest.raises(AutCapExceeded):
            enumerate_automorphisms(elementary_abelian(2, 5), cap=20000)
        with pytest.raises(InvalidParameter):
            enumerate_automorphisms(cyclic(3), cap=0)

    def test_gl52_order_by_generators(self):
        n = math.prod(2 ** 5 - 2 ** i for i in range(5))
        assert automorphism_order(elementary_abelian(2, 5)) == n == 9999360

    @pytest.mark.parametrize("G", SMALL, ids=lambda G: f"order{G.order}")
    def test_matches_bruteforce(self, G):
        found = enumerate_automorphisms(G)
        assert keyset(m.images for m in found) == keyset(automorphisms(G))
        for m in found:
            assert m.is_homomorphism() and m.is_bijective()

    def test_lexicographic_order(self):
        G = dihedral(4)
        gens = minimal_generating_set(G)
        tuples = [tuple(m.images[gens]) for m in enumerate_automorphisms(G)]
        assert tuples == sorted(tuples)

    def test_closed_under_composition_and_inverse(self):
        G = dihedral(4)
        autos = enumerate_automorphisms(G)
        keys = {m.key for m in autos}
        for a in autos:
            assert a.inverse().key in keys
            for b in autos:
                assert a.then(b).key in keys

    def test_catalog_orders_match_reference(self, catalog, gap):
        wrong = [e.id for e in catalog
                 if automorphism_order(e.build()) != gap[e.id]["aut_order"]]
        assert wrong == []

    def test_generators_generate_everything(self):
        for G in (dihedral(4), quaternion8(), elementary_abelian(2, 3), symmetric(4)):
            gens = automorphism_generators(G)
            assert not gens.complete
            A = maps_as_group(gens.maps)
            assert A.order == gens.order == len(enumerate_automorphisms(G))


class TestEndomorphisms:
    def test_cyclic_counts(self):
        for n in (1, 2, 3, 8, 12):
            assert len(enumerate_endomorphisms(cyclic(n))) == n

    def test_d8_matches_bruteforce(self):
        G = dihedral(4)
        found = enumerate_endomorphisms(G)
        assert keyset(m.images for m in found) == keyset(homomorphisms(G, G))

    @pytest.mark.parametrize("G", SMALL, ids=lambda G: f"order{G.order}")
    def test_witness_closure_is_every_image(self, G):
        every = enumerate_endomorphisms(G).images
        wit = endomorphism_witnesses(G)
        assert wit.kind == ENDOMORPHISMS
        for x in range(G.order):
            assert endomorphism_images(G, x) == sorted(set(every[:, x].tolist()))

    def test_cap(self):
        with pytest.raises(EndCapExceeded):
            enumerate_endomorphisms(elementary_abelian(2, 3), cap=100)

    def test_homomorphisms_between_groups(self):
        # Hom(S3, C2) has 2 elements, Hom(C2, S3) has 4
        assert len(enumerate_homomorphisms(symmetric(3), cyclic(2))) == 2
        assert len(enumerate_homomorphisms(cyclic(2), symmetric(3))) == 4


class TestInner:
    def test_abelian_has_only_identity(self):
        inn = inner_automorphisms(cyclic(6))
        assert len(inn) == 1 and inn.maps[0].is_identity()

    def test_sizes(self):
        assert len(inner_automorphisms(dihedral(4))) == 4
        assert len(inner_automorphisms(from_generators(symmetric_spec(3)))) == 6
        for G in SMALL:
            assert len(inner_automorphisms(G)) == G.order // center(G).order

    def test_classes_fixed_setwise(self):
        G = symmetric(4)
        for m in inner_automorphisms(G):
            for c in conjugacy_classes(G):
                assert set(m.images[c].tolist()) == set(c)


class TestAutAsGroup:
    def test_examples(self):
        A, _ = aut_as_group(enumerate_automorphisms(cyclic(5)))
        assert A.order == 4 and A.element_order.max() == 4
        A, _ = aut_as_group(enumerate_automorphisms(klein_four()))
        assert A.order == 6 and not A.is_abelian
        A, _ = aut_as_group(enumerate_automorphisms(cyclic(1)))
        assert A.order == 1

    def test_left_operand_applied_first(self):
        autos = enumerate_automorphisms(dihedral(4))
        A, pos = aut_as_group(autos)
        index_of = {int(pos[i]): m for i, m in enumerate(autos.maps)}
        for i, a in enumerate(autos.maps):
            for j, b in enumerate(autos.maps):
                prod = index_of[int(A.table[pos[i], pos[j]])]
                assert np.array_equal(prod.images, a.then(b).images)
        assert index_of[0].is_identity()

    def test_rejects_incomplete(self):
        with pytest.raises(InvalidParameter):
            aut_as_group(automorphism_generators(dihedral(4)))


class TestOrbits:
    def test_identity_map(self):
        G = dihedral(4)
        ident = MapSet(G, [GroupMap.identity(G)])
        assert orbit_closure(3, ident) == [3]

    def test_empty_map_set(self):
        assert orbit_closure(2, MapSet(cyclic(4), [])) == [2]

    def test_klein_involutions(self):
        V = klein_four()
        assert orbit_closure(1, enumerate_automorphisms(V)) == [1, 2, 3]

    def test_d8_order_four_elements(self):
        G = dihedral(4)
        x = int(np.flatnonzero(G.element_order == 4)[0])
        orb = orbit_closure(x, enumerate_automorphisms(G))
        assert sorted(orb) == np.flatnonzero(G.element_order == 4).tolist()

    def test_orbits_refine_class_unions(self):
        G = symmetric(4)
        autos = enumerate_automorphisms(G)
        sizes = class_sizes(G)
        for x in range(G.order):
            orb = orbit_closure(x, autos)
            assert len({int(G.element_order[y]) for y in orb}) == 1
            assert len({int(sizes[y]) for y in orb}) == 1
            assert all(x in orbit_closure(y, autos) for y in orb)


class TestPsi:
    def test_trivial_phi_gives_identity(self):
        A, B = cyclic(3), klein_four()
        G = direct_product(A, B)
        assert psi_factory(G, GroupMap.trivial(A, B)).is_identity()

    def test_klein_swap(self):
        A = B = cyclic(2)
        G = direct_product(A, B)
        psi = psi_factory(G, GroupMap(A, B, np.array([0, 1])))
        assert psi.is_homomorphism() and psi.is_bijective()
        # (1,0) is index 2, (1,1) is index 3
        assert psi(2) == 3
        first, _ = factor_masks(G, 2, 2)
        assert not first.members[psi.images[first.elements]].all()
        assert map_order(psi) == 2

    def test_c6_c2_moves_only_the_c6_factor(self):
        A, B = cyclic(6), cyclic(2)
        G = direct_product(A, B)
        phi = GroupMap(A, B, np.arange(6) % 2)
        psi = psi_factory(G, phi)
        assert psi.is_homomorphism() and psi.is_bijective()
        first, second = factor_masks(G, 6, 2)
        assert not first.members[psi.images[first.elements]].all()
        assert second.members[psi.images[second.elements]].all()

    def test_exponent_two_target_gives_involution(self):
        A, B = cyclic(4), klein_four()
        G = direct_product(A, B)
        phi = GroupMap(A, B, np.array([0, 1, 0, 1]))
        assert phi.is_homomorphism()
        assert map_order(psi_factory(G, phi)) == 2

    def test_not_central(self):
        A, B = cyclic(2), symmetric(3)
        t = int(np.flatnonzero(B.element_order == 2)[0])
        with pytest.raises(NotCentral):
            psi_factory(direct_product(A, B), GroupMap(A, B, np.array([0, t])))
