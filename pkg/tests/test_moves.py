import json
import random

import pytest

from conftest import random_code
from vbcocycle import moves
from vbcocycle.codes import catalog_entries, catalog_lookup, parse_code, serialize_code
from vbcocycle.cohomology import compatible_pairs
from vbcocycle.fixtures import FIXTURES
from vbcocycle.invariant import counting_invariant, phi_vyb

CATALOG = sorted(catalog_entries())
PAIRS = {name: compatible_pairs(f.table, f.S) for name, f in FIXTURES.items()}


def test_kink_insertion_shape():
    code = catalog_lookup("trefoil")
    new, rec = moves.insert_kink(code, (0, 2), -1, "UO")
    assert serialize_code(new) == "O1+ U2+ U4- O4- O3+ U1+ O2+ U3+"
    assert rec.labels == (4,)
    assert moves.apply_inverse(new, rec) == code


def test_kink_on_empty_component():
    new, _ = moves.insert_kink(catalog_lookup("unknot"), (0, 0), 1, "OU")
    assert serialize_code(new) == "O1+ U1+"


def test_virtual_kink_and_poke_shapes():
    code = parse_code("O1+ U1+")
    new, _ = moves.insert_virtual_kink(code, (0, 1), "LR")
    assert serialize_code(new) == "O1+ L2 R2 U1+"
    new, _ = moves.insert_virtual_poke(code, (0, 0), (0, 2), "antiparallel")
    assert serialize_code(new) == "R2 L3 O1+ U1+ R3 L2"
    with pytest.raises(ValueError):
        moves.insert_virtual_poke(code, (0, 1), (0, 1))


def test_sites_are_checked():
    code = catalog_lookup("trefoil")
    with pytest.raises(IndexError):
        moves.insert_kink(code, (1, 0))
    with pytest.raises(IndexError):
        moves.insert_kink(code, (0, 7))


def test_detour_reproduces_poke():
    code = catalog_lookup("trefoil")
    a, _ = moves.detour_reroute(code, (0, 2, 0), [(0, 5, "R"), (0, 5, "L")])
    b, _ = moves.insert_virtual_poke(code, (0, 2), (0, 5), "parallel")
    assert a == b
    a, _ = moves.detour_reroute(code, (0, 2, 0), [(0, 5, "R", 1), (0, 5, "L", 0)])
    b, _ = moves.insert_virtual_poke(code, (0, 2), (0, 5), "antiparallel")
    assert a == b


def test_detour_rejects_classical_segment_and_unsound_plans():
    code = catalog_lookup("virtual_trefoil")
    with pytest.raises(ValueError, match="classical"):
        moves.detour_reroute(code, (0, 0, 2), [])
    with pytest.raises(ValueError, match="unsound"):
        moves.detour_reroute(code, (0, 1, 1), [])


def test_detour_removing_a_bigon():
    code, _ = moves.insert_virtual_poke(catalog_lookup("figure8"), (0, 1), (0, 6), "parallel")
    # the R/L pair sits at offsets 1, 2; their partners are adjacent further on
    back, rec = moves.detour_reroute(code, (0, 1, 2), [])
    assert back == catalog_lookup("figure8")
    assert moves.apply_inverse(back, rec) == code


def test_reduce_virtual_normal_form():
    code = catalog_lookup("virtual_link22")
    new, _ = moves.insert_virtual_kink(code, (1, 2))
    new, _ = moves.insert_virtual_poke(new, (0, 0), (1, 4), "antiparallel")
    assert moves.reduce_virtual(new) == moves.reduce_virtual(code)


def test_record_json_round_trip():
    code = catalog_lookup("virtual_hopf")
    new, records = moves.random_equivalent(code, 5, 8)
    again = [moves.MoveRecord.from_json(json.loads(r.dumps())) for r in records]
    assert again == records
    assert moves.replay(new, again) == code


def test_random_equivalent_is_deterministic():
    code = catalog_lookup("virtual_link22")
    assert moves.random_equivalent(code, 42, 6) == moves.random_equivalent(code, 42, 6)
    with pytest.raises(ValueError):
        moves.random_equivalent(code, 0, -1)


def test_inverses_on_random_codes():
    rng = random.Random(5)
    for seed in range(200):
        code = random_code(rng)
        new, records = moves.random_equivalent(code, seed, 5)
        assert moves.replay(new, records) == code


def test_removals_find_inserted_structures():
    code = catalog_lookup("trefoil")
    new, rec = moves.insert_virtual_poke(code, (0, 1), (0, 4), "parallel")
    assert tuple(sorted(rec.labels)) in moves.find_pokes(new)
    back, rec2 = moves.remove_poke(new, *rec.labels)
    assert back == code
    assert moves.apply_inverse(back, rec2) == new
    with pytest.raises(ValueError):
        moves.remove_kink(code, 1)


def fuzz_cases(n_cases):
    """(seed, catalog name, fixture name, pair index) cycling over the full grid."""
    fixtures = sorted(FIXTURES)
    for seed in range(n_cases):
        name = CATALOG[seed % len(CATALOG)]
        fx = fixtures[(seed // len(CATALOG)) % len(fixtures)]
        yield seed, name, fx, seed % len(PAIRS[fx])


def check_fuzz_case(seed, name, fx, k, n_moves=4, max_passages=16):
    """Return None if the invariants survive, else a description."""
    f = FIXTURES[fx]
    pair = PAIRS[fx][k]
    code = catalog_lookup(name)
    new, records = moves.random_equivalent(code, seed, n_moves, max_passages=max_passages)
    if not records:
        return f"seed {seed}: no moves applied"
    if counting_invariant(new, f.vb) != counting_invariant(code, f.vb):
        return f"seed {seed}: count changed on {name}/{fx}"
    a = phi_vyb(code, f.vb, pair.phi, pair.v)
    b = phi_vyb(new, f.vb, pair.phi, pair.v)
    if a.multiset() != b.multiset():
        return f"seed {seed}: invariant changed on {name}/{fx}: {serialize_code(new)}"
    return None


def test_move_invariance_smoke():
    # the full 1000+ sequence run lives in the acceptance suite
    for case in fuzz_cases(96):
        assert check_fuzz_case(*case) is None
