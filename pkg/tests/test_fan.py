import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricbott.fan import (
    Fan,
    MalformedInput,
    NotACone,
    UnknownFamily,
    builtin,
    fan_from_dict,
    fan_hash,
    fan_to_dict,
    hirzebruch,
    product,
    projective_space,
    star_subdivision,
    stratum_fan,
    validate,
    walls,
)
from toricbott.suite import suite_fans

P2 = projective_space(2)


def test_p2_is_smooth_and_complete():
    diag = validate(P2)
    assert diag.smooth and diag.complete and diag.fan_axioms


def test_missing_cone_not_complete():
    f = Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2)))
    diag = validate(f)
    assert diag.smooth and not diag.complete


def test_determinant_two_not_smooth():
    f = Fan(2, ((1, 0), (1, 2), (-1, -1), (0, -1)), ((0, 1), (1, 2), (2, 3), (0, 3)))
    assert not validate(f).smooth


def test_nonprimitive_ray_rejected():
    with pytest.raises(MalformedInput):
        validate(Fan(2, ((2, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2))))


def test_wrong_cone_size_rejected():
    with pytest.raises(MalformedInput):
        validate(Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1, 2),)))


def test_overlapping_cones_fail_fan_axioms():
    # cone(e1, e2) and cone(e1+2e2, e2-ish) overlap in the interior
    f = Fan(2, ((1, 0), (0, 1), (1, 1)), ((0, 1), (0, 2)))
    assert not validate(f).fan_axioms


def test_wall_counts():
    assert len(walls(P2)) == 3
    assert len(walls(product(projective_space(1), projective_space(1)))) == 4
    assert len(walls(projective_space(3))) == 6


def test_walls_match_cone_count_formula():
    for f in suite_fans().values():
        expected = len(f.max_cones) * f.dim // 2
        assert len(walls(f)) == expected


def test_star_subdivision_p2():
    bl = star_subdivision(P2, (0, 1))
    assert bl.n_rays == 4
    assert (1, 1) in bl.rays
    assert len(bl.max_cones) == 4


def test_star_subdivision_p3_max_cone():
    p3 = projective_space(3)
    bl = star_subdivision(p3, p3.max_cones[0])
    assert bl.n_rays == 5
    assert len(bl.max_cones) == 6


def test_star_subdivision_single_ray_rejected():
    with pytest.raises(MalformedInput):
        star_subdivision(P2, (0,))


def test_star_subdivision_requires_a_cone():
    p1xp1 = product(projective_space(1), projective_space(1))
    # rays 0 and 1 are the two opposite rays of the first factor
    assert p1xp1.rays[0] == (1, 0) and p1xp1.rays[1] == (-1, 0)
    with pytest.raises(NotACone):
        star_subdivision(p1xp1, (0, 1))


def test_star_subdivision_preserves_smooth_complete():
    for f in suite_fans().values():
        if f.dim < 2:
            continue
        bl = star_subdivision(f, f.max_cones[0])
        assert validate(bl).ok


def test_surface_cone_count_equals_ray_count():
    for f in suite_fans().values():
        if f.dim == 2:
            assert len(f.max_cones) == f.n_rays


def test_stratum_of_p2_ray_is_p1():
    sp = stratum_fan(P2, (1,))
    assert sp.fan.dim == 1
    assert set(sp.fan.rays) == {(1,), (-1,)}


def test_stratum_of_p1xp1_ray_is_p1():
    p1xp1 = product(projective_space(1), projective_space(1))
    sp = stratum_fan(p1xp1, (0,))
    assert sp.fan.dim == 1
    assert set(sp.fan.rays) == {(1,), (-1,)}


def test_stratum_of_empty_cone_is_the_fan():
    sp = stratum_fan(P2, ())
    assert sp.fan == P2


def test_stratum_fans_stay_smooth_complete():
    for f in suite_fans().values():
        for i in range(f.n_rays):
            sp = stratum_fan(f, (i,))
            assert sp.fan.dim == f.dim - 1
            assert validate(sp.fan).ok


def test_projective_space_rays():
    p1 = projective_space(1)
    assert set(p1.rays) == {(1,), (-1,)}


def test_hirzebruch_zero_is_p1xp1():
    f0 = hirzebruch(0)
    assert f0.n_rays == 4 and len(f0.max_cones) == 4
    p1xp1 = product(projective_space(1), projective_space(1))

    def cone_vectors(f):
        return sorted(tuple(sorted(f.rays[i] for i in c)) for c in f.max_cones)

    assert cone_vectors(f0) == cone_vectors(p1xp1)


def test_builtin_dispatch():
    assert builtin("projective_space", dim=2) == P2
    assert builtin("hirzebruch", param=1) == hirzebruch(1)
    with pytest.raises(UnknownFamily):
        builtin("weighted_projective", dim=2)


def test_fan_file_format_roundtrip():
    data = fan_to_dict(P2)
    text = json.dumps(data)
    assert fan_from_dict(json.loads(text)) == P2


def test_fan_from_dict_rejects_junk():
    with pytest.raises(MalformedInput):
        fan_from_dict({"dim": 2, "rays": [[1, 0]], "max_cones": [[0, 5]]})


def test_fan_hash_is_stable():
    assert fan_hash(P2) == fan_hash(projective_space(2))
    assert fan_hash(P2) != fan_hash(projective_space(3))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(suite_fans())))
def test_double_subdivision_stays_valid(name):
    f = suite_fans()[name]
    if f.dim < 2:
        return
    once = star_subdivision(f, f.max_cones[0])
    twice = star_subdivision(once, once.max_cones[-1])
    assert validate(twice).ok
