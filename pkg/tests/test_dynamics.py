"""Orbits, global periodicity, periodic points, itineraries, closed forms."""

from fractions import Fraction

import mpmath as mp
import pytest

from cluster_reduce import (
    BirationalMap,
    DynamicsError,
    MonomialMap,
    cluster_map,
    detect_global_periodicity,
    detect_period,
    find_periodic_points,
    first_integral_check,
    get_fixture,
    golden_ratio,
    iterate_orbit,
    leaf_itinerary,
    no_periodic_points_scan,
    orbit_sequence,
    plastic_root,
    somos5_constrained_start,
    submersion_from_rows,
    verify_closed_form,
)

LYNESS = BirationalMap.from_strings(["x2", "(x2 + 1)/x1"])
PSI_HAT5 = BirationalMap.from_strings(["x2", "(x2 + 1)/(x1*x2)"])
PSI_1 = BirationalMap.from_strings(["x2", "(x2 + 1)/x1", "(x2^2 + x2)/x3"])
PSI_2 = BirationalMap.from_strings(
    ["x2", "(x2 + 1)/x1", "(x2^2 + x2)/x3", "x5", "x3*x5^2/(x2*x4)"]
)

C7_Y = [
    (1, 0, -1, -1, 0, 1, 0),
    (0, 1, 0, -1, -1, 0, 1),
    (1, 0, 0, -2, 0, 0, 1),
]


def _phi(name: str) -> BirationalMap:
    b = get_fixture(name).matrix("B")
    return cluster_map(b, detect_period(b))


def _ones(n: int):
    return tuple(Fraction(1) for _ in range(n))


class TestOrbits:
    def test_somos5_sequence(self):
        orbit = iterate_orbit(_phi("somos5"), _ones(5), 8)
        seq = orbit_sequence(orbit)
        assert seq == [1, 1, 1, 1, 1, 2, 3, 5, 11, 37, 83, 274, 1217]

    def test_exact_orbit_structure(self):
        orbit = iterate_orbit(LYNESS, (Fraction(1), Fraction(1)), 5)
        assert len(orbit) == 6
        assert orbit.mode == "exact"
        assert orbit.points[0] == (1, 1)
        assert orbit.points[5] == orbit.points[0]

    def test_float_orbit(self):
        orbit = iterate_orbit(LYNESS, (Fraction(1), Fraction(1)), 5, mode="float", precision=50)
        assert orbit.mode == "float"
        assert orbit.precision == 50
        with mp.workdps(50):
            assert abs(orbit.points[5][0] - 1) < mp.mpf("1e-45")

    def test_vanishing_denominator_reported(self):
        f = BirationalMap.from_strings(["x2", "(x2 + 1)/(x1 - 1)"])
        with pytest.raises(DynamicsError, match="step"):
            iterate_orbit(f, (Fraction(2), Fraction(1)), 5)

    def test_bad_mode_rejected(self):
        with pytest.raises(ValueError):
            iterate_orbit(LYNESS, (Fraction(1), Fraction(1)), 2, mode="sloppy")


class TestGlobalPeriodicity:
    def test_lyness_is_five_periodic(self):
        report = detect_global_periodicity(LYNESS)
        assert report.is_periodic
        assert (report.kind, report.period) == ("global", 5)
        assert report.certificate == "symbolic"

    def test_psi1_is_ten_periodic(self):
        report = detect_global_periodicity(PSI_1)
        assert report.period == 10

    def test_identity_has_period_one(self):
        report = detect_global_periodicity(BirationalMap.identity(2))
        assert report.period == 1

    def test_psi_hat5_is_not_periodic(self):
        report = detect_global_periodicity(PSI_HAT5)
        assert report.kind == "none"
        assert report.period is None
        assert not report.is_periodic

    def test_bound_respected(self):
        report = detect_global_periodicity(PSI_1, p_max=8)
        assert report.kind == "none"


class TestFirstIntegrals:
    def test_labels_return_after_global_period(self):
        phi = _phi("c7-pair")
        pi_null = MonomialMap.from_rows(C7_Y[:2], 7)
        pi_cas = MonomialMap.from_rows(C7_Y, 7)
        assert first_integral_check(phi, pi_null, 5)
        assert first_integral_check(phi, pi_cas, 10)

    def test_wrong_power_fails(self):
        phi = _phi("c7-pair")
        pi_null = MonomialMap.from_rows(C7_Y[:2], 7)
        assert not first_integral_check(phi, pi_null, 3)


class TestPeriodicPoints:
    def test_lyness_fixed_point_is_golden(self):
        points = find_periodic_points(LYNESS, 1)
        assert len(points) == 1
        fp = points[0]
        with mp.workdps(64):
            g = golden_ratio()
            assert abs(fp.point[0] - g) < mp.mpf("1e-40")
            assert abs(fp.point[1] - g) < mp.mpf("1e-40")
            assert fp.residual < mp.mpf("1e-40")
        assert fp.period == 1

    def test_psi_hat5_fixed_point_is_plastic(self):
        points = find_periodic_points(PSI_HAT5, 1)
        assert len(points) == 1
        with mp.workdps(64):
            r = plastic_root()
            assert abs(points[0].point[0] - r) < mp.mpf("1e-40")
            assert abs(points[0].point[1] - r) < mp.mpf("1e-40")
            # r is the real root of t^3 = t + 1
            assert abs(r**3 - r - 1) < mp.mpf("1e-60")

    def test_psi1_fixed_point(self):
        points = find_periodic_points(PSI_1, 1, grid=4)
        assert len(points) == 1
        with mp.workdps(64):
            g = golden_ratio()
            expected = mp.sqrt(g**3)
            assert abs(points[0].point[0] - g) < mp.mpf("1e-40")
            assert abs(points[0].point[1] - g) < mp.mpf("1e-40")
            assert abs(points[0].point[2] - expected) < mp.mpf("1e-40")

    def test_dimension_cap(self):
        with pytest.raises(DynamicsError):
            find_periodic_points(PSI_2, 1)

    def test_precision_scales_residual(self):
        points = find_periodic_points(LYNESS, 1, precision=128)
        with mp.workdps(128):
            assert points[0].residual < mp.mpf("1e-100")


class TestItineraries:
    def test_exact_label_periods(self):
        phi = _phi("c7-pair")
        subs = [
            submersion_from_rows(C7_Y[:2], 7, kind="null"),
            submersion_from_rows(C7_Y, 7, kind="casimir"),
        ]
        for start in [
            _ones(7),
            tuple(Fraction(v) for v in (1, 2, 1, 3, 1, 1, 2)),
            tuple(Fraction(v, 2) for v in (2, 3, 2, 5, 2, 7, 2)),
        ]:
            itin = leaf_itinerary(phi, subs, start, 20)
            assert itin.names == ("null-2d", "casimir-3d")
            assert itin.periods == (5, 10)

    def test_summary_mentions_periods(self):
        phi = _phi("c7-pair")
        subs = [submersion_from_rows(C7_Y[:2], 7, kind="null")]
        itin = leaf_itinerary(phi, subs, _ones(7), 20)
        text = itin.summary()
        assert "null-2d" in text and "5" in text

    def test_custom_names(self):
        phi = _phi("c7-pair")
        subs = [submersion_from_rows(C7_Y[:2], 7, kind="null")]
        itin = leaf_itinerary(phi, subs, _ones(7), 10, names=["lyness"])
        assert itin.names == ("lyness",)

    def test_non_periodic_labels(self):
        phi = _phi("somos5")
        subs = [submersion_from_rows([(1, -1, -1, 1, 0), (0, 1, -1, -1, 1)], 5, kind="null")]
        itin = leaf_itinerary(phi, subs, _ones(5), 15)
        assert itin.periods == (None,)


class TestScans:
    def test_lyness_scan_finds_period(self):
        scan = no_periodic_points_scan(LYNESS)
        assert scan.period_found == 5

    def test_psi2_scan_finds_nothing_and_orbits_grow(self):
        scan = no_periodic_points_scan(PSI_2)
        assert scan.period_found is None
        assert scan.monotone_growth
        assert scan.growth_samples == scan.samples == 25
        assert "sampled evidence" in scan.note

    def test_scan_is_seeded(self):
        a = no_periodic_points_scan(PSI_2, samples=5, seed=3)
        b = no_periodic_points_scan(PSI_2, samples=5, seed=3)
        assert a == b


class TestClosedForms:
    def test_constrained_start_satisfies_recurrence(self):
        with mp.workdps(64):
            lam = mp.mpf(2)
            r = mp.mpf(3)
            start = somos5_constrained_start(mp.mpf(1), mp.mpf(1), lam, r)
            assert len(start) == 5
            # x1 x4 = r x2 x3 and x2 x5 = r x3 x4 by construction
            assert abs(start[0] * start[3] - r * start[1] * start[2]) < mp.mpf("1e-55")
            assert abs(start[1] * start[4] - r * start[2] * start[3]) < mp.mpf("1e-55")

    def test_principal_family(self):
        phi = _phi("somos5")
        with mp.workdps(64):
            r = plastic_root()
            lam = mp.sqrt(r)
            start = somos5_constrained_start(mp.mpf(1), mp.mpf(1), lam, r)
            orbit = iterate_orbit(phi, start, 22, mode="float")
            report = verify_closed_form(orbit, "principal", mp.mpf(1), mp.mpf(1), lam, r)
        assert report.ok
        assert report.family == "principal"
        assert report.n_checked == 20
        assert report.max_rel_error < mp.mpf("1e-40")

    def test_general_family(self):
        phi = _phi("somos5")
        with mp.workdps(64):
            r = plastic_root()
            lam = 2 * mp.sqrt(r)
            start = somos5_constrained_start(mp.mpf(1), mp.mpf(1), lam, r)
            orbit = iterate_orbit(phi, start, 42, mode="float")
            report = verify_closed_form(orbit, "general", mp.mpf(1), mp.mpf(1), lam, r)
        assert report.ok
        assert report.n_checked == 40
        assert report.max_rel_error < mp.mpf("1e-40")

    def test_orbit_too_short_rejected(self):
        phi = _phi("somos5")
        with mp.workdps(64):
            r = plastic_root()
            lam = mp.sqrt(r)
            start = somos5_constrained_start(mp.mpf(1), mp.mpf(1), lam, r)
            orbit = iterate_orbit(phi, start, 5, mode="float")
            with pytest.raises(DynamicsError):
                verify_closed_form(orbit, "principal", mp.mpf(1), mp.mpf(1), lam, r)

    def test_exact_orbit_rejected(self):
        orbit = iterate_orbit(_phi("somos5"), _ones(5), 5)
        with pytest.raises(DynamicsError):
            verify_closed_form(orbit, "principal", 1, 1, 2, 4)

    def test_unknown_family_rejected(self):
        phi = _phi("somos5")
        with mp.workdps(64):
            start = somos5_constrained_start(mp.mpf(1), mp.mpf(1), mp.mpf(2), mp.mpf(4))
            orbit = iterate_orbit(phi, start, 25, mode="float")
            with pytest.raises(ValueError):
                verify_closed_form(orbit, "exotic", mp.mpf(1), mp.mpf(1), mp.mpf(2), mp.mpf(4))


class TestSpecialValues:
    def test_golden_ratio(self):
        with mp.workdps(64):
            g = golden_ratio()
            assert abs(g * g - g - 1) < mp.mpf("1e-60")

    def test_plastic_root_precision(self):
        with mp.workdps(100):
            r = plastic_root(precision=100)
            assert abs(r**3 - r - 1) < mp.mpf("1e-95")
