import math

import pytest
from hypothesis import given, strategies as st

from permlabel import harness
from permlabel.boundaries import INFINITY
from permlabel.codec import LabelFormatError, MAX_WIDTH
from permlabel.graph import UNREACHABLE, component_blocks, distance_matrix, from_permutation, random_permutation
from permlabel.scheme import (LabelCodec, VertexLabel, analyze_component, collapse, collapse_all, contains,
                              decode_distance, deserialize_label, encode, encode_component, label_length,
                              rank_values, serialize_label, view_of)

from conftest import FIG3, connected_permutations, permutations


def analyses(pi):
    for block in component_blocks(from_permutation(pi)):
        if block.size > 1:
            yield analyze_component(block.points)


def real(lam):
    return (lam, 0, 0, 0)


# --- collapsing ------------------------------------------------------------------

@given(connected_permutations(max_size=20))
def test_fast_collapse_matches_direct_scan(pi):
    for an in analyses(pi):
        fast = collapse_all(an)
        for x, ext in an.extremes.items():
            assert fast[x] == collapse(an.vertex(x), an.b, ext)


@given(connected_permutations(max_size=20))
def test_collapse_flags_and_anchors(pi):
    for an in analyses(pi):
        b = an.b
        for x, c in collapse_all(an).items():
            e = an.extremes[x]
            assert c.binf == b.is_last(e.blast)
            assert c.tinf == b.is_last(e.tlast)
            if c.binf:
                assert c.y_val.key() == real(b.lam[e.tfirst])
            else:
                assert b.lam[e.blast] < c.y_val.lam <= b.lam[e.tfirst]
            if c.tinf:
                assert c.x_val.key() == real(b.lam[e.bfirst])
            else:
                assert b.lam[e.tlast] < c.x_val.lam <= b.lam[e.bfirst]


@given(connected_permutations(max_size=20))
def test_modified_ranges_only_widen(pi):
    top = (math.inf,)
    for an in analyses(pi):
        b = an.b
        for x, c in collapse_all(an).items():
            e = an.extremes[x]
            assert (top if c.binf else c.y_val.key()) >= real(b.lam[e.blast])
            assert c.y_val.key() <= real(b.lam[e.tfirst])
            assert (top if c.tinf else c.x_val.key()) >= real(b.lam[e.tlast])
            assert c.x_val.key() <= real(b.lam[e.bfirst])


@given(connected_permutations(min_size=4, max_size=20))
def test_stored_values_are_monotone(pi):
    for an in analyses(pi):
        b, col = an.b, collapse_all(an)
        items = list(an.extremes.items())
        for xu, eu in items:
            for xv, ev in items:
                u, v, cu, cv = an.vertex(xu), an.vertex(xv), col[xu], col[xv]
                if b.layer[eu.blast] == b.layer[ev.blast] and v.y > u.y:
                    assert not (cu.binf and not cv.binf)
                    if not cu.binf and not cv.binf:
                        assert cv.y_val.key() >= cu.y_val.key()
                if b.layer[eu.tlast] == b.layer[ev.tlast] and v.x > u.x:
                    assert not (cu.tinf and not cv.tinf)
                    if not cu.tinf and not cv.tinf:
                        assert cv.x_val.key() >= cu.x_val.key()


@given(connected_permutations(max_size=20))
def test_fresh_values_are_distinct_and_ranked_in_order(pi):
    for an in analyses(pi):
        col = collapse_all(an).values()
        fresh = [v.key() for c in col for v in (c.y_val, c.x_val) if v.fresh]
        assert len(fresh) == len(set(fresh))
        values = [v for c in col for v in (c.y_val, c.x_val)]
        rank = rank_values(values)
        assert sorted(rank.values()) == list(range(len(rank)))
        assert sorted(rank, key=rank.get) == sorted(rank)


# --- encoding ------------------------------------------------------------------

def test_single_inversion_labels():
    labels = encode([2, 1])
    assert [vid for vid, _ in labels] == [1, 2]
    assert decode_distance(labels[0][1], labels[1][1]) == 1


def test_component_prefixes():
    fig = dict(encode(FIG3))
    comp = {vid: deserialize_label(bits)[0].component_index for vid, bits in fig.items()}
    assert comp == {1: 1, **{v: 0 for v in range(2, 9)}}
    assert {deserialize_label(b)[0].component_index for _, b in encode([3, 1, 4, 2])} == {0}


def test_identity_is_all_unreachable():
    labels = [b for _, b in encode([1, 2, 3, 4])]
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            assert decode_distance(a, b) == (0 if i == j else UNREACHABLE)


@given(connected_permutations(max_size=20))
def test_encode_component_shares_index_and_codec(pi):
    labels, codec = encode_component(from_permutation(pi), 3)
    assert [x for x, _ in labels] == list(range(1, len(pi) + 1))
    assert {lab.component_index for _, lab in labels} == {3}
    for _, lab in labels:
        assert deserialize_label(serialize_label(lab, codec)) == (lab, codec)


@pytest.mark.parametrize("n", [16, 64, 256, 1024])
def test_label_length_near_three_log(n):
    pi = random_permutation(n, n)
    block = component_blocks(from_permutation(pi))[0]
    an = analyze_component(block.points)
    labels, codec = encode_component(block.points, 0, an)
    longest = max(label_length(lab, codec) for _, lab in labels)
    header = 2 * 6 + 6 + 2 + 1  # width fields, offsets, flags, gamma(1)
    assert longest <= 3 * math.ceil(math.log2(an.aug.points.size)) + header


# --- decoding -----------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 7))
def test_decoder_matches_oracle_exhaustive(n):
    report = harness.verify_exhaustive(n, ["L3"])["L3"]
    assert report.passed, report.mismatches[:3]


@given(permutations(max_size=30))
def test_decoder_matches_oracle_scalar(pi):
    D = distance_matrix(from_permutation(pi))
    labels = dict(encode(pi))
    for u in labels:
        for v in labels:
            got = decode_distance(labels[u], labels[v])
            want = UNREACHABLE if D[u - 1, v - 1] < 0 else int(D[u - 1, v - 1])
            assert got == want
            assert decode_distance(labels[v], labels[u]) == got


@given(connected_permutations(max_size=20))
def test_adjacent_pairs_decided_by_containment(pi):
    ps = from_permutation(pi)
    labels = dict(encode(pi))
    views = {v: view_of(deserialize_label(b)[0]) for v, b in labels.items()}
    for p in ps:
        for q in ps:
            if p.x < q.x and (p.y > q.y):
                assert contains(views[p.x], views[q.x]) or contains(views[q.x], views[p.x])


def test_views_mark_last_points_infinite():
    lab = VertexLabel(0, 2, 1, 0, 1, 1, 5, 0, 3)
    v = view_of(lab)
    assert v.blast.lam == INFINITY and v.tlast.lam == 3 and v.tfirst.lam == 5 and v.bfirst.lam == 3
    assert [a.layer for a in v[1:5]] == [2, 3, 2, 3]


# --- serialization ---------------------------------------------------------------

label_fields = st.builds(
    lambda comp, wl, wv, base, d, flags, vals: (
        VertexLabel(comp, base % (1 << wl), *d, flags[0], vals[0] % (1 << wv), flags[1],
                    vals[1] % (1 << wv)),
        LabelCodec(wl, wv)),
    st.integers(0, 10 ** 6), st.integers(0, MAX_WIDTH), st.integers(0, MAX_WIDTH),
    st.integers(0, 2 ** 63), st.tuples(*[st.integers(-1, 2)] * 3),
    st.tuples(st.integers(0, 1), st.integers(0, 1)),
    st.tuples(st.integers(0, 2 ** 63), st.integers(0, 2 ** 63)))


@given(label_fields)
def test_serialization_round_trip_and_length(case):
    lab, codec = case
    bits = serialize_label(lab, codec)
    assert len(bits) == label_length(lab, codec)
    assert deserialize_label(bits) == (lab, codec)


@pytest.mark.parametrize("lab, codec", [
    (VertexLabel(0, 0, -1, -1, -1, 0, 0, 0, 0), LabelCodec(0, 0)),
    (VertexLabel(2 ** 20, 2 ** 63 - 1, 2, 2, 2, 1, 2 ** 63 - 1, 1, 2 ** 63 - 1), LabelCodec(63, 63)),
])
def test_serialization_edge_labels(lab, codec):
    bits = serialize_label(lab, codec)
    assert deserialize_label(bits) == (lab, codec)
    assert len(bits) == label_length(lab, codec)


def test_serialization_overflow():
    with pytest.raises(OverflowError):
        serialize_label(VertexLabel(0, 8, 0, 0, 0, 0, 0, 0, 0), LabelCodec(3, 1))
    with pytest.raises(OverflowError):
        serialize_label(VertexLabel(0, 0, 0, 0, 0, 0, 0, 0, 0), LabelCodec(64, 1))
    with pytest.raises(OverflowError):
        serialize_label(VertexLabel(0, 0, 3, 0, 0, 0, 0, 0, 0), LabelCodec(1, 1))


@pytest.mark.parametrize("bits", ["", "1", "1000000000000", "10x1", encode([2, 1])[0][1] + "0",
                                  encode([2, 1])[0][1][:-1]])
def test_malformed_labels_rejected(bits):
    with pytest.raises(LabelFormatError):
        deserialize_label(bits)
    with pytest.raises(LabelFormatError):
        decode_distance(bits, bits)
