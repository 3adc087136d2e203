import pytest

import fsind


def test_info_of_the_order_24_example():
    info = fsind.info(fsind.spec(k=12, q=2, n=5))
    assert info["order"] == 24
    assert info["constants"]["c"] == 4
    assert info["constants"]["d_mod_kq"] == 6
    assert info["split_part_i"] and not info["split_part_ii"]


def test_quaternion_eight():
    info = fsind.info(fsind.spec(quaternion=2))
    assert (info["order"], info["center_order"], info["classes"]) == (8, 2, 5)
    nu2 = {r["label"]: r["nu_brute"] for r in fsind.group_indicators(fsind.spec(quaternion=2)) if r["m"] == 2}
    assert sorted(nu2.values()) == [-1, 1, 1, 1, 1]


def test_invalid_spec_raises_value_error():
    with pytest.raises(ValueError, match="mod k"):
        fsind.spec(k=5, q=2, n=2)
    with pytest.raises(fsind.InvalidSpec):
        fsind.spec(k=7)


def test_double_of_dihedral_ten_is_real():
    rows = fsind.double_indicators(fsind.spec(k=5, q=2, n=4), m_max=2)
    nu2 = [r["nu_brute"] for r in rows if r["m"] == 2]
    assert len(nu2) == 16 and set(nu2) == {1}
    assert all(r["agree"] and r["nu_brute"] == r["nu_centralizer"] for r in rows)


def test_small_verify_fails_only_on_printed_statements():
    report = fsind.verify(24, q_set=[2, 3], l_max=2, quat_max=3)
    assert report["specs"] > 0 and report["skipped"] == 0
    for name, (checked, failed) in report["suites"].items():
        if not name.endswith("printed"):
            assert failed == 0, name
