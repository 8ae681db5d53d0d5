"""Tests for newform construction, Hecke relations, and angle tables."""

from math import acos, pi

import numpy as np
import pytest

from tautools.newforms import (
    FORMS,
    AngleTable,
    NewformSpec,
    build_angle_table,
    build_form,
    curve_ap,
    curve_point_count,
    get_form_spec,
    hecke_check,
    supersingular_primes,
    theta_angle,
)
from tautools.qexp import FourierSeries

import oracles

# tau_16(2) = tau(2) + 240 = 216, tau_18(2) = tau(2) - 504 = -528, etc.:
# the Eisenstein factor contributes c_{k-12} * sigma_{k-13}(1) at n = 2.
WEIGHT_TO_A2 = {12: -24, 16: 216, 18: -528, 20: 456, 22: -288, 26: -48}


def test_registry_has_the_seven_forms():
    assert sorted(FORMS) == [
        "11a", "delta12", "delta16", "delta18", "delta20", "delta22", "delta26",
    ]
    assert get_form_spec("delta12").weight == 12
    assert get_form_spec("11a").level == 11
    with pytest.raises(ValueError):
        get_form_spec("delta14")
    with pytest.raises(AssertionError):
        NewformSpec("bogus", 14, 1, "eta-product")


def test_every_form_is_normalized():
    for label in FORMS:
        f = build_form(label, 4)
        assert f[0] == 0 and f[1] == 1, label


def test_delta12_prefix():
    f = build_form("delta12", 3)
    assert f[2] == -24


def test_a2_values_all_weights():
    for label, spec in FORMS.items():
        if spec.level != 1:
            continue
        f = build_form(label, 3)
        assert f[2] == WEIGHT_TO_A2[spec.weight], label


def test_level11_matches_point_counts_small_primes():
    f = build_form("11a", 8)
    for p in (3, 5, 7):
        assert f[p] == p + 1 - oracles.point_count_naive(p)
    assert f[2] == 2 + 1 - oracles.point_count_naive(2)


def test_curve_ap_against_naive_enumeration():
    for p in (2, 3, 5, 7, 13, 17, 19, 101, 197, 199):
        assert curve_point_count(p) == oracles.point_count_naive(p)
        assert curve_ap(p) == p + 1 - oracles.point_count_naive(p)
    with pytest.raises(ValueError):
        curve_ap(11)


def test_curve_matches_eta_coefficients_to_300():
    f = build_form("11a", 301)
    from tautools.primes import primes_up_to

    for p in primes_up_to(300).tolist():
        if p != 11:
            assert f[p] == curve_ap(p), p


def test_hecke_relations_delta12():
    f = build_form("delta12", 3000)
    ok, why = hecke_check(f, 12)
    assert ok, why
    # the two spec'd spot values
    assert f[6] == f[2] * f[3] == -6048
    assert f[4] == f[2] ** 2 - 2**11 == -1472


def test_hecke_relations_all_level1_forms(delta_forms_10k):
    for label, f in delta_forms_10k.items():
        ok, why = hecke_check(f, get_form_spec(label).weight)
        assert ok, (label, why)


def test_hecke_relations_level11():
    f = build_form("11a", 3000)
    ok, why = hecke_check(f, 2, level=11)
    assert ok, why
    # at the bad prime the Euler factor is linear: a(11^2) = a(11)^2
    assert f[121] == f[11] ** 2
    assert f[1331] == f[11] ** 3


def test_hecke_check_reports_violations():
    coeffs = list(build_form("delta12", 50).coeffs)
    coeffs[6] += 1
    ok, why = hecke_check(FourierSeries(coeffs), 12)
    assert not ok and "a(6)" in why

    coeffs = list(build_form("delta12", 50).coeffs)
    coeffs[8] += 1  # 8 = 2^3 exercises the prime-power branch
    ok, why = hecke_check(FourierSeries(coeffs), 12)
    assert not ok and "recursion" in why

    assert hecke_check(FourierSeries([0, 1]), 12) == (True, None)
    ok, _ = hecke_check(FourierSeries([0, 5]), 12)
    assert not ok


def test_theta_angle_endpoints():
    assert theta_angle(0, 101, 12) == pi / 2
    # k = 3 makes 2 p^((k-1)/2) = 2p integral: the exact endpoints
    assert theta_angle(10, 5, 3) == 0.0
    assert theta_angle(-10, 5, 3) == pi


def test_theta_angle_delta12_at_2():
    t = theta_angle(-24, 2, 12)
    assert abs(t - 1.8392) < 1e-4
    assert abs(t - acos(-24 / (2 * 2**5.5))) < 1e-14


def test_theta_angle_rejects_deligne_violation():
    with pytest.raises(ValueError):
        theta_angle(11, 5, 3)  # bound is 10
    with pytest.raises(ValueError):
        theta_angle(-3 * 10**9, 10**6 + 3, 2)


def test_theta_angle_monotone_in_ap():
    p, k = 997, 12
    bound = int(2 * p ** ((k - 1) / 2))
    samples = [-bound, -1234567, -1, 0, 1, 999999, bound]
    angles = [theta_angle(a, p, k) for a in samples]
    assert angles == sorted(angles, reverse=True)
    assert all(0 <= t <= pi for t in angles)


def test_angle_table_counts():
    t12 = build_angle_table("delta12", 100)
    assert len(t12) == 25
    t11 = build_angle_table("11a", 100)
    assert len(t11) == 24  # p = 11 has no angle
    assert 11 not in t11.primes.tolist()
    assert np.all(t12.thetas >= 0) and np.all(t12.thetas <= pi)


def test_angle_table_values_match_direct_formula():
    f = build_form("delta12", 101)
    table = build_angle_table("delta12", 100, series=f)
    for p, theta in table:
        assert theta == theta_angle(f[p], p, 12)


def test_angle_table_requires_enough_precision():
    f = build_form("delta12", 50)
    with pytest.raises(ValueError):
        build_angle_table("delta12", 50, series=f)


def test_angle_table_in_range():
    table = build_angle_table("delta12", 200)
    sub = table.in_range(100, 200)
    assert sub.primes.min() >= 101 and sub.primes.max() <= 199
    assert len(sub) == len(table) - 25


def test_angle_table_csv_roundtrip(tmp_path):
    table = build_angle_table("11a", 300)
    path = str(tmp_path / "angles.csv")
    table.save_csv(path)
    with open(path) as fh:
        head = fh.readline()
    assert head == "# form: 11a\n"
    loaded = AngleTable.load_csv(path)
    assert loaded.spec == table.spec
    assert loaded.x_max == 300
    assert np.array_equal(loaded.primes, table.primes)
    assert np.array_equal(loaded.thetas, table.thetas)  # 17 digits roundtrip exactly


def test_angle_table_csv_requires_form_header(tmp_path):
    p = tmp_path / "h.csv"
    p.write_text("p,theta_p\n2,1.0\n")
    with pytest.raises(ValueError):
        AngleTable.load_csv(str(p))


def test_deligne_bound_every_form_to_1e4(delta_forms_10k):
    # theta_angle raises on any Deligne violation, so building the tables
    # IS the assertion sweep
    for label, f in delta_forms_10k.items():
        build_angle_table(label, 10_000, series=f)
    build_angle_table("11a", 10_000)


def test_supersingular_primes_to_2000():
    # each scan hit is re-certified against the point count inside the call
    assert supersingular_primes(2000) == [19, 29, 199, 569, 809, 1289, 1439]


def test_unsupported_build_rejected():
    with pytest.raises(ValueError):
        build_form("delta13", 10)
