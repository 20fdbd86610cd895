import pytest

from indalg.orders import acts as ac
from indalg.orders import suite as su

ACT_CHECKS = [
    "fs_rstar_vs_r",
    "fs_lstar_vs_l",
    "ei_commuting_compositions",
    "eii_l_gamma_left",
    "eii_r_gamma_right",
    "eiii_l_idempotent",
    "eiii_r_idempotent",
    "evi_l_left_cancellation",
    "evi_r_right_cancellation",
    "evii_r_kernel_cancellation",
    "gii_hstar_left_ore",
]


def test_act_suite_all_checks_pass_small_ranks():
    for n in (1, 2, 3):
        report = su.run_act_suite(n, seed=0, samples=60)
        assert [c["name"] for c in report] == ACT_CHECKS
        for check in report:
            assert check["outcome"] == "pass", (n, check)
            assert check["samples"] == 60
            assert check["failures"] == []


def test_act_suite_kernel_cancellation_nonvacuous():
    report = su.run_act_suite(2, seed=3, samples=80)
    evii = next(c for c in report if c["name"] == "evii_r_kernel_cancellation")
    assert evii["details"]["nonvacuous"] > 0


def test_matrix_suite_passes():
    for n in (1, 2, 3, 4):
        report = su.run_matrix_suite(n, seed=1, samples=60)
        assert [c["name"] for c in report] == [
            "fs_rstar_vs_r",
            "fs_lstar_vs_l",
            "eii_r_matrix_informational",
        ]
        for check in report:
            assert check["outcome"] == "pass", (n, check)


def test_suite_reports_deterministic():
    a = su.run_act_suite(2, seed=7, samples=40)
    b = su.run_act_suite(2, seed=7, samples=40)
    assert a == b
    c = su.run_matrix_suite(2, seed=7, samples=40)
    d = su.run_matrix_suite(2, seed=7, samples=40)
    assert c == d


def test_run_suite_dispatch():
    assert su.run_suite("act", 2, 0, 10) == su.run_act_suite(2, 0, 10)
    assert su.run_suite("matrix", 2, 0, 10) == su.run_matrix_suite(2, 0, 10)
    with pytest.raises(ValueError):
        su.run_suite("nope", 2, 0, 10)


def test_window_kernel_leq_matches_pair_scan():
    import random

    rng = random.Random(50)
    for _ in range(300):
        n = rng.randint(1, 3)
        a = ac.rand_act_endo(rng, n)
        b = ac.rand_act_endo(rng, n)
        assert su.window_kernel_leq(a, b) == ac.kernel_leq(a, b)


def test_construct_image_gamma_verified_by_caller():
    import random

    rng = random.Random(51)
    for _ in range(300):
        n = rng.randint(1, 3)
        a = ac.rand_act_endo(rng, n)
        b = ac.rand_act_endo(rng, n)
        gamma = su.construct_image_gamma(a, b)
        divisible = gamma is not None and ac.compose(gamma, ac.lift_endo(b)) == ac.ActEndo(
            "A", a.shifts, a.targets
        )
        assert divisible == ac.greens_leq("L", a, b)
