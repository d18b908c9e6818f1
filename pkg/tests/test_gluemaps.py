"""Gluing maps, arc attachments, cutting isomorphisms, multiplicativity."""

from __future__ import annotations

import pytest

from curvetqft import gf2
from curvetqft import gluemaps as gm
from curvetqft import surfaces as sf
from curvetqft import tqftcore as tc

K1 = ((0, 3), (1, 2), (4, 5))
K2 = ((0, 5), (1, 4), (2, 3))
K3 = ((0, 1), (2, 5), (3, 4))


def middle_class_image(result, m_src, chords):
    union = sf.make_dividing_set((), [chords, [(0, 1)]])
    return result.image_of(m_src, union)


def test_attachment_tables():
    expected = {
        0: ["K+", "K+", "0"],
        1: ["0", "K-", "K-"],
        2: ["K+", "0", "K+"],
    }
    for j in range(3):
        result, m_src, m_tgt = gm.attach_arc_map(3, j)
        assert m_tgt.rank == 2
        row = []
        for chords in (K1, K2, K3):
            v = middle_class_image(result, m_src, chords)
            row.append("0" if v.is_zero else ("K+" if v.grading == 1 else "K-"))
        assert row == expected[j]


def test_attachment_on_any_position():
    # Positions wrap around the disk; each map must be well-defined.
    for j in range(6):
        result, m_src, m_tgt = gm.attach_arc_map(3, j)
        assert m_tgt.rank == 2
        images = [v for v in result.images]
        assert any(not v.is_zero for v in images)


def test_glue_kills_exactly_circle_creators():
    # Attaching across marks (j, j+1) annihilates exactly the matchings
    # with a chord at (j, j+1).
    for j in range(4):
        result, m_src, _ = gm.attach_arc_map(2, j)
        for k in sf.enumerate_matchings(2):
            union = sf.make_dividing_set((), [k.chords[0], [(0, 1)]])
            v = result.image_of(m_src, union)
            has_chord = tuple(sorted(((j % 4), (j + 1) % 4))) in k.chords[0]
            assert v.is_zero == has_chord


def test_disjoint_union_gluing_is_isomorphism():
    # Gluing two disks along arcs through one marked point each.
    source = sf.disjoint_union(sf.disk(4), sf.disk(4))
    # The arcs run through one marked point each, in sectors of opposite
    # label so that the glued labels alternate.
    datum = gm.GluingDatum(
        source,
        gm.BoundaryArc(0, 1, 3),
        gm.BoundaryArc(1, 3, 5),
    )
    info = gm.glue_surfaces(datum)
    assert sf.validate_surface(info.target).euler == 1
    m_src = tc.build_module(source, 0)
    m_tgt = tc.build_module(info.target, 1)
    result = gm.glue_map(info, m_src, m_tgt)
    assert m_src.rank == m_tgt.rank == 4
    assert gf2.rank(list(result.basis_columns)) == 4


def test_gluing_sends_zero_to_zero():
    result, m_src, m_tgt = gm.attach_arc_map(3, 0)
    for gen in m_src.generators:
        src_v = tc.class_of(m_src, gen)
        if src_v.is_zero:
            img = result.images[m_src.generator_index(gen)]
            assert img.is_zero


def test_functoriality_two_disjoint_attachments():
    # Attaching boundary-parallel arcs at two disjoint positions commutes:
    # the kernel pattern and pairwise identifications of the composite
    # agree whichever arc goes first.
    n = 4
    positions = (0, 2)

    def composite(first, second):
        datum1 = gm.attach_arc_datum(n, first)
        info1 = gm.glue_surfaces(datum1)
        # Marks of the big disk keep their token positions via token_map.
        m1_src = tc.build_module(datum1.source, 0)
        m1_tgt = tc.build_module(info1.target, 2)
        res1 = gm.glue_map(info1, m1_src, m1_tgt)
        source2 = sf.disjoint_union(info1.target, sf.disk(2))
        total = 4 * n
        start = info1.token_map[(0, (2 * second - 1) % total)][1]
        end = info1.token_map[(0, (2 * second + 3) % total)][1]
        small_piece = source2.num_pieces - 1
        gamma_prime = gm.BoundaryArc(small_piece, 1, 1) if second % 2 \
            else gm.BoundaryArc(small_piece, 3, 3)
        datum2 = gm.GluingDatum(source2, gm.BoundaryArc(0, start, end), gamma_prime)
        info2 = gm.glue_surfaces(datum2)
        m2_tgt = tc.build_module(info2.target, 2)

        out, vecs = [], []
        for k in sf.enumerate_matchings(n):
            union1 = sf.make_dividing_set((), [k.chords[0], [(0, 1)]])
            mid = sf.canonicalize(info1.target, gm.map_dividing_set(info1, union1))
            union2 = sf.make_dividing_set(
                mid.crossings, list(mid.chords) + [((0, 1),)], mid.closed
            )
            v = tc.class_of(m2_tgt, gm.map_dividing_set(info2, union2))
            out.append((v.is_zero, v.grading if not v.is_zero else None))
            vecs.append(v.coords)
        pattern = [
            [vecs[i] == vecs[j] for j in range(len(vecs))] for i in range(len(vecs))
        ]
        return out, pattern

    out_a, pat_a = composite(positions[0], positions[1])
    out_b, pat_b = composite(positions[1], positions[0])
    assert out_a == out_b
    assert pat_a == pat_b


def test_cut_annulus_to_disk():
    ann = sf.annulus(2, 2, (1, -1))
    info = gm.cut_surface(ann, 0)
    cut_info = sf.validate_surface(info.cut_surface)
    assert cut_info.euler == 1
    assert cut_info.marks_per_circle == (6,)
    report = gm.cut_check(ann, 0, 2)
    assert report.passed
    assert report.rank_original == report.rank_cut == 4


def test_cut_rejects_even_seam():
    # The default annulus seam meets every dividing set evenly; cutting it
    # cannot produce a consistent marked surface.
    with pytest.raises(gm.GluingError):
        gm.cut_surface(sf.annulus(2, 2), 0)


def test_cut_punctured_torus_twice():
    torus = sf.punctured_torus(2)
    first = gm.cut_surface(torus, 0)
    mid_info = sf.validate_surface(first.cut_surface)
    assert mid_info.euler == 0
    assert sorted(mid_info.marks_per_circle) == [2, 2]
    second = gm.cut_surface(first.cut_surface, 0)
    final_info = sf.validate_surface(second.cut_surface)
    assert final_info.euler == 1
    assert final_info.marks_per_circle == (6,)
    m = tc.build_module(second.cut_surface, 0)
    assert m.rank == 4
    assert m.graded_ranks() == {2: 1, 0: 2, -2: 1}


@pytest.mark.parametrize("pair", [0, 1])
def test_cut_check_torus(pair):
    report = gm.cut_check(sf.punctured_torus(2), pair, 2)
    assert report.passed
    assert report.rank_original == 4


def test_multiplicativity():
    m1 = tc.build_module(sf.disjoint_union(sf.disk(4), sf.disk(4)), 0)
    assert m1.rank == 4
    m2 = tc.build_module(sf.disjoint_union(sf.disk(2), sf.annulus(2, 2)), 3)
    assert m2.rank == 4
    assert m1.expected_rank == 4 and m2.expected_rank == 4


def test_glue_requires_matching_marks():
    source = sf.disjoint_union(sf.disk(6), sf.disk(2))
    with pytest.raises(gm.GluingError, match="marked points"):
        gm.glue_surfaces(gm.GluingDatum(
            source, gm.BoundaryArc(0, 1, 3), gm.BoundaryArc(1, 3, 3)
        ))


def test_glue_rejects_overlapping_arcs():
    source = sf.disk(8)
    with pytest.raises(gm.GluingError, match="overlap"):
        gm.glue_surfaces(gm.GluingDatum(
            source, gm.BoundaryArc(0, 1, 5), gm.BoundaryArc(0, 3, 7)
        ))


def test_glue_rejects_arc_across_seam():
    source = sf.annulus(2, 2)
    with pytest.raises(gm.GluingError, match="identification"):
        gm.glue_surfaces(gm.GluingDatum(
            source, gm.BoundaryArc(0, 1, 1), gm.BoundaryArc(0, 3, 5)
        ))


def test_bound_guard_on_target():
    datum = gm.attach_arc_datum(3, 0)
    info = gm.glue_surfaces(datum)
    m_src = tc.build_module(datum.source, 0)
    m_tgt = tc.build_module(info.target, 1)
    with pytest.raises(tc.BoundExceededError):
        gm.glue_map(info, m_src, m_tgt)
