"""Acceptance suite: one test per criterion, exact tolerances throughout.

Every check here is an exact identity on rationals or a property of the
half-integer index arithmetic; the only tolerances are the numeric-path
thresholds declared in CrossingTolerances, which the symbolic paths used
here never touch.  Each criterion prints one PASS line (visible with
pytest -s); a failed assertion means the criterion fails.
"""

import random
import time
from fractions import Fraction

from linkmd.czindex import cz_index, determinant_loop_degree, small_extension_bound
from linkmd.discrepancy import (
    NEG_INFINITY,
    DiscrepancyVector,
    compute_discrepancies,
    check_uniqueness_certificate,
    minimal_discrepancy,
)
from linkmd.fixtures import (
    ADE_FIXTURES,
    DIVERGENT_FIXTURES,
    EQUALITY_FIXTURES,
    SEPARATION_FIXTURES,
    SMOOTH_FIXTURES,
    fixture,
)
from linkmd.orbits import (
    OrbitMultiplicity,
    cone_orbit_cz,
    family_indices,
    lsft_direct,
    mi_bruteforce,
    mi_closed_form,
    separation_report,
)
from linkmd.paths import (
    BlockSegment,
    RotationBlock,
    ShearBlock,
    SymplecticPath,
    catenate,
    conjugate,
    constant_identity,
    direct_sum,
    exp_quadratic_segment,
    rotation_segment,
    shear_path,
    split_at,
    unitary_loop,
    with_durations,
)


def test_criterion_1_main_identity_equality_cases():
    for name in EQUALITY_FIXTURES:
        started = time.perf_counter()
        res = fixture(name)
        a = compute_discrepancies(res)
        md = minimal_discrepancy(a)
        assert md.is_finite, name
        closed = mi_closed_form(a)
        brute = mi_bruteforce(res, a, budget=8)
        assert closed == brute == 2 * md.value, name
        elapsed = time.perf_counter() - started
        assert elapsed < 1.0, f"{name} took {elapsed:.2f}s"
    print(
        f"PASS: criterion 1 - mi closed form = brute force (D=8) = 2*md exactly "
        f"on all {len(EQUALITY_FIXTURES)} equality fixtures"
    )


def test_criterion_2_main_identity_divergence_case():
    (name,) = DIVERGENT_FIXTURES
    res = fixture(name)
    a = compute_discrepancies(res)
    md = minimal_discrepancy(a)
    assert md.value is NEG_INFINITY
    assert a.values == (Fraction(-3),)
    values = [mi_bruteforce(res, a, budget=d) for d in range(1, 7)]
    # oracle: the budget-D minimum is the D-fold family, lsft = 2(a+1)D - 2
    oracle = [2 * (a.values[0] + 1) * d - 2 for d in range(1, 7)]
    assert values == oracle == [-6, -10, -14, -18, -22, -26]
    assert all(x > y for x, y in zip(values, values[1:])), "descent must be strict"
    assert mi_closed_form(a) is NEG_INFINITY
    print(
        "PASS: criterion 2 - genus-2 fixture has md = -inf and strictly "
        f"decreasing brute-force descent {values}"
    )


def test_criterion_3_smooth_model_check():
    for name, n in SMOOTH_FIXTURES.items():
        res = fixture(name)
        a = compute_discrepancies(res)
        md = minimal_discrepancy(a)
        assert md.value == n - 1, name
        assert mi_closed_form(a) == 2 * (n - 1) == mi_bruteforce(res, a, 8), name
    a3 = compute_discrepancies(fixture("smooth-c3"))
    for k in range(1, 11):
        fam = family_indices(OrbitMultiplicity.from_dict({1: k}), a3, n=3)
        assert fam.cz == 6 * k
        assert fam.lsft == 6 * k - 2
    print(
        "PASS: criterion 3 - smooth models give md = n-1, mi = 2(n-1); "
        "n=3 k-fold families have cz = 6k, lsft = 6k-2 for k = 1..10"
    )


def test_criterion_4_ade_canonicity():
    for name in ADE_FIXTURES:
        res = fixture(name)
        a = compute_discrepancies(res)
        assert all(v == 0 for v in a.values), name
        md = minimal_discrepancy(a)
        assert md.value == 0, name
        cert = check_uniqueness_certificate(res)
        assert cert.full_rank, name
        assert cert.negative_definite, name
        for k, minor in enumerate(cert.surface_minors, start=1):
            assert (-1) ** k * minor > 0, (name, k, minor)
    print(
        "PASS: criterion 4 - A_1..A_4 and D_4 give a = 0, md = 0, "
        "negative-definiteness minors alternate (zero tolerance)"
    )


def _random_block(rng):
    if rng.random() < 0.6:
        return RotationBlock(
            Fraction(rng.randint(-8, 8), rng.randint(1, 6)),
            Fraction(rng.randint(-10, 10), rng.randint(1, 4)),
        )
    return ShearBlock(
        Fraction(rng.randint(-6, 6), rng.randint(1, 3)),
        Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
        Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
    )


def _continue_block(block, rng):
    if isinstance(block, RotationBlock):
        return RotationBlock(
            block.start + block.turns,
            Fraction(rng.randint(-10, 10), rng.randint(1, 4)),
        )
    return ShearBlock(
        block.a, block.s_end, Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    )


def _random_path(rng, blocks, segments):
    current = [_random_block(rng) for _ in range(blocks)]
    segs = [BlockSegment(tuple(current))]
    for _ in range(segments - 1):
        current = [_continue_block(b, rng) for b in current]
        segs.append(BlockSegment(tuple(current)))
    return SymplecticPath(2 * blocks, tuple(segs))


def _random_symplectic_2x2(rng):
    p = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    for _ in range(2):
        choice = rng.randint(0, 2)
        if choice == 0:
            m = [[Fraction(1), Fraction(0)], [Fraction(rng.randint(-2, 2), 3), Fraction(1)]]
        elif choice == 1:
            m = [[Fraction(1), Fraction(rng.randint(-2, 2), 3)], [Fraction(0), Fraction(1)]]
        else:
            m = [[Fraction(3, 5), Fraction(4, 5)], [Fraction(-4, 5), Fraction(3, 5)]]
        p = [
            [sum(p[i][k] * m[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)
        ]
    return p


def test_criterion_5_cz_axiom_suite():
    started = time.perf_counter()
    rng = random.Random(20260808)
    paths_exercised = 0

    # CZ2: constant paths vanish
    for _ in range(25):
        dim = 2 * rng.randint(1, 4)
        start = [(Fraction(rng.randint(-3, 3), rng.randint(1, 5)), Fraction(0)) for _ in range(dim // 2)]
        const = SymplecticPath(dim, (rotation_segment(start),))
        assert cz_index(const).value == 0
        paths_exercised += 1

    # CZ3: catenation additivity
    for _ in range(50):
        p1 = _random_path(rng, blocks=rng.randint(1, 2), segments=rng.randint(1, 2))
        tail = p1.segments[-1].blocks
        p2 = SymplecticPath(
            p1.dimension, (BlockSegment(tuple(_continue_block(b, rng) for b in tail)),)
        )
        v1, v2 = cz_index(p1).value, cz_index(p2).value
        assert cz_index(catenate(p1, p2)).value == v1 + v2
        assert (2 * (v1 + v2)).denominator == 1
        paths_exercised += 2

    # CZ4: direct-sum additivity
    for _ in range(40):
        p1 = _random_path(rng, blocks=1, segments=rng.randint(1, 3))
        p2 = _random_path(rng, blocks=rng.randint(1, 2), segments=rng.randint(1, 2))
        assert (
            cz_index(direct_sum(p1, p2)).value
            == cz_index(p1).value + cz_index(p2).value
        )
        paths_exercised += 2

    # CZ5: unitary loop law via the determinant winding
    for _ in range(45):
        turns = [rng.randint(-5, 5) for _ in range(rng.randint(1, 3))]
        loop = unitary_loop(turns, start=Fraction(rng.randint(0, 11), 12))
        assert determinant_loop_degree(loop) == sum(turns)
        assert cz_index(loop).value == 2 * sum(turns)
        paths_exercised += 1

    # reparameterization invariance (durations and splits)
    for _ in range(30):
        p = _random_path(rng, blocks=rng.randint(1, 2), segments=rng.randint(1, 2))
        baseline = cz_index(p).value
        durations = [Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in p.segments]
        assert cz_index(with_durations(p, durations)).value == baseline
        assert cz_index(split_at(p, Fraction(rng.randint(1, 7), 8))).value == baseline
        paths_exercised += 2

    # conjugation invariance on nondegenerate quadratic flows
    for _ in range(10):
        while True:
            s = [[Fraction(rng.randint(-6, 6)) for _ in range(2)] for _ in range(2)]
            s[0][1] = s[1][0]
            if s[0][0] * s[1][1] - s[0][1] ** 2 != 0:
                break
        path = SymplecticPath(2, (exp_quadratic_segment(s),))
        p = _random_symplectic_2x2(rng)
        assert cz_index(conjugate(path, p)).value == cz_index(path).value
        paths_exercised += 2

    elapsed = time.perf_counter() - started
    assert paths_exercised >= 200
    assert elapsed < 10.0, f"axiom suite took {elapsed:.1f}s"
    print(
        f"PASS: criterion 5 - CZ2/CZ3/CZ4/CZ5 + reparameterization + conjugation "
        f"exact on {paths_exercised} randomized paths in {elapsed:.1f}s"
    )


def test_criterion_6_named_index_values():
    for a in (Fraction(1), Fraction(3), Fraction(1, 2)):
        assert cz_index(shear_path([a])).value == Fraction(-1, 2)
    for k in range(-3, 4):
        path = constant_identity(2) if k == 0 else unitary_loop([k])
        assert cz_index(path).value == 2 * k
    print(
        "PASS: criterion 6 - shear index is exactly -1/2; unitary loops give "
        "exactly 2k for k in -3..3"
    )


def test_criterion_7_small_extension_bound():
    rng = random.Random(4290)
    trials = 0
    kernel_dims_seen = set()
    while trials < 100:
        blocks = rng.randint(1, 3)
        prefix = _random_path(rng, blocks=blocks, segments=rng.randint(1, 2))
        ext_blocks = []
        for b in prefix.segments[-1].blocks:
            if isinstance(b, RotationBlock):
                delta = Fraction(rng.randint(-1, 1), 1000)
                ext_blocks.append(RotationBlock(b.start + b.turns, delta))
            else:
                bound = max(1, abs(b.a.numerator) // b.a.denominator + 1)
                delta = Fraction(rng.randint(-1, 1), 400 * bound)
                ext_blocks.append(ShearBlock(b.a, b.s_end, b.s_end + delta))
        extension = SymplecticPath(prefix.dimension, (BlockSegment(tuple(ext_blocks)),))
        report = small_extension_bound(prefix, extension)
        assert report.within_bound, (
            prefix,
            report.kernel_dim,
            report.extension_index,
        )
        kernel_dims_seen.add(report.kernel_dim)
        trials += 1
    # the sample must include both trivial and nontrivial kernels
    assert 0 in kernel_dims_seen and max(kernel_dims_seen) >= 2
    print(
        f"PASS: criterion 7 - extension index within [-k/2, k/2] on {trials} "
        f"randomized endpoint/extension pairs (kernel dims seen: {sorted(kernel_dims_seen)})"
    )


def test_criterion_8_internal_consistency_of_family_formulas():
    rng = random.Random(1729)
    checked = 0
    cone_checked = 0
    for _ in range(1000):
        n = rng.randint(2, 6)
        l = rng.randint(1, 5)
        a = DiscrepancyVector(
            tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 6)) for _ in range(l))
        )
        size = rng.randint(1, l)
        ids = sorted(rng.sample(range(1, l + 1), size))
        v = OrbitMultiplicity(tuple((i, rng.randint(1, 7)) for i in ids))
        fam = family_indices(v, a, n)
        assert fam.lsft == fam.cz - Fraction(fam.size, 2) + (n - 3)
        assert fam.lsft == lsft_direct(v, a)
        checked += 1
        if size == 1:
            (i,) = ids
            k = dict(v.entries)[i]
            a_i = dict(zip(range(1, l + 1), a.values))[i]
            assert cone_orbit_cz(a_i, k, a_i.denominator) == fam.cz
            cone_checked += 1
    assert checked == 1000 and cone_checked > 100
    print(
        f"PASS: criterion 8 - both lsft derivations agree on {checked} random "
        f"families; cone winding arithmetic matches on {cone_checked} single-divisor cases"
    )


def test_criterion_9_corollary_separation_property():
    nonvacuous = 0
    for name in SEPARATION_FIXTURES:
        res = fixture(name)
        a = compute_discrepancies(res)
        md = minimal_discrepancy(a)
        assert md.is_finite and md.value >= 0, name
        report = separation_report(res, a, md, budget=8)
        assert report.holds, name
        for fam in report.checked:
            assert fam.lsft >= 0 and fam.lsft > 2 * md.value, (name, fam)
        nonvacuous += len(report.checked)
    assert nonvacuous > 0, "separation check must cover at least one family"
    print(
        f"PASS: criterion 9 - every short-period non-extremal family has "
        f"lsft >= 0 and lsft > 2*md ({nonvacuous} families checked across "
        f"{len(SEPARATION_FIXTURES)} fixtures)"
    )
