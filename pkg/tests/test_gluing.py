"""Overlattice gluing, primitivity, and the two flagship constructions."""

from fractions import Fraction
from itertools import permutations

import pytest

from k3lat import (
    GlueData,
    NonIsotropicGlueError,
    NotDualVectorError,
    direct_sum,
    e8,
    enumerate_vectors_of_norm,
    gamma16,
    glue,
    hyperbolic_plane,
    is_primitive,
    lattice_fingerprint,
    nikulin_square_in_gamma16,
    nikulin_square_overlattice,
    rank_one,
    root_span_index,
    u2cubed_nikulin_overlattice,
)
from k3lat.gluing import (
    restriction_recovers_base,
    u2cubed_nikulin_base,
    u2cubed_nikulin_glue_vectors,
    verification_block,
)
from k3lat.lattice import nikulin_node_coords

F = Fraction


def test_unimodular_glue_fingerprint():
    over = u2cubed_nikulin_overlattice()
    lat = over.lattice
    assert lat.is_even
    assert lat.determinant == -1
    assert lat.signature.as_pair() == (3, 11)
    assert over.glue_order == 64
    # unique even unimodular lattice of signature (3,11): matches U^3 + E8(-1)
    target = direct_sum([hyperbolic_plane()] * 3 + [e8(-1)])
    assert lattice_fingerprint(lat) == lattice_fingerprint(target)


def test_glue_restriction_recovers_base():
    over = u2cubed_nikulin_overlattice()
    assert restriction_recovers_base(over)
    assert verification_block(over) == {
        "even": True,
        "det": -1,
        "signature": [3, 11],
        "index": 64,
    }


def test_glue_determinant_law():
    over = u2cubed_nikulin_overlattice()
    assert over.lattice.determinant * over.glue_order ** 2 == over.base.determinant


def test_trivial_glue_returns_base():
    base = u2cubed_nikulin_base()
    over = glue(GlueData.of(base, []))
    assert over.lattice.gram == base.gram
    assert over.glue_order == 1


def test_non_isotropic_glue_reports_element():
    base = direct_sum([rank_one(2), rank_one(2)])
    with pytest.raises(NonIsotropicGlueError):
        glue(GlueData.of(base, [[F(1, 2), F(1, 2)]]))  # q = (2+2)/4 = 1 mod 2Z


def test_non_dual_vector_rejected():
    with pytest.raises(NotDualVectorError):
        glue(GlueData.of(hyperbolic_plane(2), [[F(1, 3), 0]]))


def test_gamma16_glue():
    over = nikulin_square_overlattice()
    lat = over.lattice
    assert lat.rank == 16
    assert lat.is_even
    assert lat.determinant == 1
    assert lat.signature.as_pair() == (0, 16)
    assert lattice_fingerprint(lat) == lattice_fingerprint(gamma16(-1))


def test_gamma16_not_generated_by_roots():
    over = nikulin_square_overlattice()
    roots = enumerate_vectors_of_norm(over.lattice, -2)
    assert len(roots) == 480
    assert root_span_index(over.lattice, roots) == 2


def test_nikulin_factors_primitive_in_glued_overlattice():
    over = nikulin_square_overlattice()
    first = [list(over.inclusion[i]) for i in range(8)]
    second = [list(over.inclusion[i]) for i in range(8, 16)]
    ok1, _ = is_primitive(over.lattice, first)
    ok2, _ = is_primitive(over.lattice, second)
    assert ok1 and ok2


def test_is_primitive_examples():
    amb = rank_one(2)
    ok, torsion = is_primitive(amb, [[2]])
    assert not ok and torsion == [2]
    lat = direct_sum([hyperbolic_plane(), hyperbolic_plane()])
    ok, torsion = is_primitive(lat, [[1, 0, 0, 0], [0, 0, 1, 0]])
    assert ok and torsion == []


def test_embedding_report():
    report = nikulin_square_in_gamma16()
    assert report["isometric_embedding"]
    assert report["in_gamma16"]
    assert report["first_factor_primitive"] and report["second_factor_primitive"]
    assert report["index"] == 2 ** 6
    assert report["spot_checks"] == {"pair_orthogonal": True, "norm_minus_two": True}


def test_glue_vectors_have_norm_minus_two_values():
    base = u2cubed_nikulin_base()
    for v in u2cubed_nikulin_glue_vectors():
        assert base.norm(v) == -2  # even: q vanishes mod 2Z


def test_s8_conjugate_glue_choices_have_equal_fingerprints():
    # relabelling the nodal classes gives fingerprint-identical overlattices
    base = u2cubed_nikulin_base()
    reference = lattice_fingerprint(u2cubed_nikulin_overlattice().lattice)
    patterns = [
        (1, 2, 3, 8),
        (1, 5, 6, 8),
        (2, 6, 7, 8),
        (1, 2, 4, 8),
        (1, 5, 7, 8),
        (3, 4, 5, 8),
    ]
    for sigma in list(permutations(range(1, 9)))[::5040][:1] + [
        (2, 1, 3, 4, 5, 6, 7, 8),
        (8, 7, 6, 5, 4, 3, 2, 1),
        (3, 1, 2, 5, 4, 7, 8, 6),
    ]:
        vectors = []
        for slot, nodes in enumerate(patterns):
            v = [F(0)] * 14
            v[[0, 2, 4, 1, 3, 5][slot]] = F(1, 2)
            for i in nodes:
                for j, c in enumerate(nikulin_node_coords(sigma[i - 1])):
                    v[6 + j] += F(c, 2)
            vectors.append(v)
        over = glue(GlueData.of(base, vectors))
        assert over.glue_order == 64
        assert lattice_fingerprint(over.lattice) == reference


def test_gamma16_stabilizes_against_e8_pair():
    # invariant fingerprints agree; an explicit isometry is out of scope
    left = direct_sum([hyperbolic_plane()] * 3 + [gamma16(-1)])
    right = direct_sum([hyperbolic_plane()] * 3 + [e8(-1), e8(-1)])
    assert lattice_fingerprint(left) == lattice_fingerprint(right)


def test_tilde_glue_determinant_law():
    from k3lat.nsfamilies import tilde_family

    for two_d in (4, 8, 12, 16):
        fam = tilde_family(two_d)
        over = fam.overlattice
        assert over.lattice.determinant * over.glue_order ** 2 == over.base.determinant
