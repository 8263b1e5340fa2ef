# tests/test_mds.py

from itertools import combinations

import numpy as np
import pytest

from mds_pir.errors import (
    DimensionMismatch,
    FieldTooSmall,
    IndexOutOfRange,
    InconsistentPoints,
    InsufficientPoints,
    TooLarge,
)
from mds_pir.field import binary_field, prime_field, same_symbols
from mds_pir.mds import (
    MdsCode,
    MessageSet,
    Shard,
    build_vandermonde,
    decode_any_t,
    encode_storage,
    verify_mds,
)
from mds_pir.params import derive


def test_vandermonde_generator(gf256):
    code = build_vandermonde(2, 3, gf256)
    assert code.generator.view(np.ndarray).tolist() == [[1, 1, 1], [1, 2, 3]]


@pytest.mark.parametrize("t, n", [(2, 3), (3, 5), (1, 4), (4, 8), (4, 4)])
def test_vandermonde_is_mds_over_gf256(gf256, t, n):
    assert verify_mds(build_vandermonde(t, n, gf256))


def test_vandermonde_is_mds_over_gf7(gf7):
    assert verify_mds(build_vandermonde(3, 5, gf7))


def test_evaluation_points_include_zero_when_n_equals_q():
    gf5 = prime_field(5)
    code = build_vandermonde(2, 5, gf5)
    assert code.generator.view(np.ndarray)[1].tolist() == [0, 1, 2, 3, 4]
    assert verify_mds(code)


def test_field_too_small():
    with pytest.raises(FieldTooSmall):
        build_vandermonde(2, 6, prime_field(5))


def test_repeated_column_is_not_mds(gf256):
    generator = gf256.array([[1, 1, 0], [2, 2, 1]])
    assert not verify_mds(MdsCode(t=2, n=3, generator=generator, field=gf256))


def test_verify_mds_cap(gf256):
    with pytest.raises(TooLarge):
        verify_mds(build_vandermonde(2, 21, gf256))


def test_generator_shape_checked(gf256):
    with pytest.raises(DimensionMismatch):
        MdsCode(t=2, n=3, generator=gf256.zeros((2, 4)), field=gf256)


def test_systematic_generator_starts_with_identity(gf256):
    code = build_vandermonde(3, 5, gf256, systematic=True)
    assert same_symbols(code.generator[:, :3], gf256.identity(3))
    assert verify_mds(code)


def test_decode_from_every_t_subset(gf256, rng):
    code = build_vandermonde(4, 8, gf256)
    w = gf256.random(4, rng)
    codeword = code.encode(w)
    for subset in combinations(range(8), 4):
        recovered = decode_any_t(code, [(j, codeword[j]) for j in subset])
        assert same_symbols(recovered, w)


def test_column_code_round_trip(gf256, rng):
    column_code = build_vandermonde(2, 3, gf256)
    w = gf256.random(2, rng)
    codeword = column_code.encode(w)
    for subset in combinations(range(3), 2):
        assert same_symbols(decode_any_t(column_code, [(j, codeword[j]) for j in subset]), w)


def test_decode_checks_extra_points(gf256, rng):
    code = build_vandermonde(2, 3, gf256)
    codeword = code.encode(gf256.random(2, rng))
    points = [(j, codeword[j]) for j in range(3)]
    assert same_symbols(decode_any_t(code, points), decode_any_t(code, points[:2]))

    tampered = points[:2] + [(2, int(codeword[2]) ^ 1)]
    with pytest.raises(InconsistentPoints):
        decode_any_t(code, tampered)


def test_decode_errors(gf256):
    code = build_vandermonde(2, 3, gf256)
    with pytest.raises(InsufficientPoints):
        decode_any_t(code, [(0, 1), (0, 1)])
    with pytest.raises(IndexOutOfRange):
        decode_any_t(code, [(0, 1), (3, 1)])
    with pytest.raises(InconsistentPoints):
        decode_any_t(code, [(0, 1), (0, 2), (1, 1)])


def test_table_walkthrough_recovers_third_coordinate(gf256, rng):
    params = derive(3, 2, 3)
    code = build_vandermonde(2, 3, gf256)
    msgs = MessageSet.random(params, gf256, rng)
    shards = encode_storage(code, msgs)
    w = decode_any_t(code, [(0, shards[0].cell(0, 0)), (1, shards[1].cell(0, 0))])
    assert code.project(w, 2) == shards[2].cell(0, 0)


def test_encode_storage_cells(gf256, rng):
    params = derive(5, 3, 4, scheme="b")
    code = build_vandermonde(3, 5, gf256)
    msgs = MessageSet.random(params, gf256, rng)
    shards = encode_storage(code, msgs)
    assert [shard.db_index for shard in shards] == list(range(5))
    for n, shard in enumerate(shards):
        assert shard.cells.shape == (4, 2)
        for k in range(4):
            for m in range(2):
                assert shard.cell(k, m) == code.project(msgs.sub_message(k, m), n)


def test_messages_never_mix(gf256, rng):
    params = derive(5, 2, 4, scheme="b")
    code = build_vandermonde(2, 5, gf256)
    msgs = MessageSet.random(params, gf256, rng)
    raw = msgs.symbols.view(np.ndarray).copy()
    raw[1] = 0
    zeroed = MessageSet(params, gf256, gf256.array(raw))

    for before, after in zip(encode_storage(code, msgs), encode_storage(code, zeroed)):
        assert same_symbols(before.cells[[0, 2, 3]], after.cells[[0, 2, 3]])
        assert not after.cells[1].view(np.ndarray).any()


def test_zero_messages_give_zero_shards(gf256):
    params = derive(3, 2, 3)
    shards = encode_storage(build_vandermonde(2, 3, gf256), MessageSet.zeros(params, gf256))
    assert all(not shard.cells.view(np.ndarray).any() for shard in shards)


def test_encode_storage_checks_dimensions(gf256):
    params = derive(3, 2, 3)
    with pytest.raises(DimensionMismatch):
        encode_storage(build_vandermonde(2, 4, gf256), MessageSet.zeros(params, gf256))


def test_message_set_views(gf256):
    params = derive(5, 3, 2, scheme="b")
    msgs = MessageSet.from_flat(params, gf256, list(range(12)))
    assert msgs.matrix(1).view(np.ndarray).tolist() == [[6, 7, 8], [9, 10, 11]]
    assert msgs.sub_message(0, 1).view(np.ndarray).tolist() == [3, 4, 5]
    assert not msgs.sub_message(0, 2).view(np.ndarray).any()
    assert msgs.flat().view(np.ndarray).tolist() == list(range(12))

    unit = MessageSet.unit(params, gf256, 7)
    assert int(unit.message(1)[1]) == 1
    assert int(np.count_nonzero(unit.flat().view(np.ndarray))) == 1


def test_message_set_shape_checked(gf256):
    with pytest.raises(DimensionMismatch):
        MessageSet(derive(3, 2, 3), gf256, gf256.zeros((3, 3)))


def test_shard_pseudo_symbols(gf256):
    shard = Shard(db_index=0, cells=gf256.array([[5, 6], [7, 8]]))
    assert int(shard.cell(1, 1)) == 8
    assert int(shard.cell(1, 2)) == 0
    assert shard.padded(4).view(np.ndarray).tolist() == [[5, 6, 0, 0], [7, 8, 0, 0]]
    assert shard.padded(1).view(np.ndarray).tolist() == [[5], [7]]


def test_binary_field_other_degree():
    gf16 = binary_field(4)
    assert verify_mds(build_vandermonde(3, 6, gf16))
