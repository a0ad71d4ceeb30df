"""Classification, threshold counts, thick sets, replacement maps, curves."""

import math
import random
from fractions import Fraction

import pytest

from genlab.balls import enumerate_ball, free_ball_count
from genlab.census import (
    LinkageFailure,
    a_thick_certify,
    a_thick_search,
    classify,
    count_cyclically_reduced,
    count_translation_below,
    double_replacement,
    exponential_negligibility_probe,
    fiber_census,
    free_group_threshold_count,
    genericity_experiment,
    replacement_map,
    single_letter_replacement,
    single_replacement_fibers,
)
from genlab.groups import FreeGroup, GeneratingSet
from genlab.spaces import OrbitSegment, build_cayley_tree

from conftest import random_word


def test_classify_worked_examples(braid):
    assert classify(braid, None, braid.element("a")).verdict == "reducible"
    aB = classify(braid, None, braid.element("aB"))
    assert aB.verdict == "pseudoAnosov" and aB.evidence["trace"] == 3
    ab = classify(braid, None, braid.element("ab"))
    assert ab.verdict == "periodic" and ab.evidence["trace"] == 1
    assert classify(braid, None, braid.identity()).verdict == "periodic"
    assert classify(braid, None, braid.element("ababab")).verdict == "periodic"


def test_classify_conjugation_and_center_invariant(braid):
    rng = random.Random(0)
    for _ in range(1000):
        g = braid.element(random_word(rng, 2, rng.randrange(0, 9)))
        h = braid.element(random_word(rng, 2, rng.randrange(0, 7)))
        conj = h * g * h.inverse()
        base = classify(braid, None, g).verdict
        assert classify(braid, None, conj).verdict == base
        assert classify(braid, None, g.inverse()).verdict == base
        assert classify(braid, None, g * braid.element("ababab")).verdict == base


def test_classify_tree_models(f2, zz23):
    assert classify(f2, None, f2.element("abA")).verdict == "contracting-loxodromic"
    assert classify(f2, None, f2.identity()).verdict == "non-loxodromic"
    assert classify(zz23, None, zz23.element("xy")).verdict == "contracting-loxodromic"
    assert classify(zz23, None, zz23.element("yxY")).verdict == "non-loxodromic"


def test_classify_unsupported():
    from genlab.groups import FiniteSample

    with pytest.raises(ValueError):
        classify(FiniteSample.cyclic(4), None, FiniteSample.cyclic(4).identity())


def test_counting_oracles_match_enumeration(f2):
    gens = f2.standard_gens()
    census = enumerate_ball(f2, gens, 7, keep_elements=True)
    for t in range(8):
        brute = sum(1 for k in census.elements[t] if f2.translation_length_exact(k) == t)
        assert count_cyclically_reduced(2, t) == brute
    for n, T in [(5, 0), (5, 2), (6, 3), (7, 1), (7, 6)]:
        brute = sum(
            1
            for r in range(n + 1)
            for k in census.elements[r]
            if f2.translation_length_exact(k) <= T
        )
        assert count_translation_below(2, n, T) == brute


def test_threshold_inequalities_k3_all_pairs():
    for n in range(1, 13):
        for T in range(0, n):
            tc = free_group_threshold_count(3, n, T)
            assert tc.linear_holds, (n, T)
            assert tc.binomial_holds, (n, T)
            assert tc.ball == free_ball_count(3, n)
    # threshold at n or above makes the factor trivial
    tc = free_group_threshold_count(3, 6, 6)
    assert tc.linear_factor == 1


def test_single_letter_replacement_properties(f3):
    w = f3.alphabet.parse("acA")
    new = single_letter_replacement(f3, w, 1)
    assert new == f3.alphabet.parse("bcA")
    assert f3.translation_length_exact(f3.normalize(new)) == 3
    # replaced words stay reduced and become loxodromic with length n - 2i
    rng = random.Random(1)
    for _ in range(300):
        n = rng.randrange(4, 11)
        word = []
        for j in range(n // 2):
            pool = [c for c in (1, -1, 2, -2, 3, -3) if not word or c != -word[-1]]
            word.append(rng.choice(pool))
        word = word + [-a for a in reversed(word)]
        word = list(__import__("genlab.words", fromlist=["free_reduce"]).free_reduce(word))
        if len(word) < 4:
            continue
        i = rng.randrange(1, len(word) // 2)
        new = single_letter_replacement(f3, tuple(word), i)
        if new is None:
            continue
        assert f3.normalize(new) == tuple(new)
        assert f3.translation_length_exact(tuple(new)) >= len(word) - 2 * i


def test_single_replacement_fibers_bounded():
    for n, T in [(6, 0), (6, 2), (8, 2)]:
        rep = single_replacement_fibers(3, n, T)
        assert rep.max_fiber <= 6, (n, T, rep.max_fiber)
        assert sum(rep.fibers.values()) == rep.domain


def test_a_thick_certify_cases(zz23, bass_serre, zz23_ledger):
    _, action, _ = bass_serre
    gens = zz23.standard_gens()
    phi = zz23.element("xy")
    g = zz23.element("xy" * 5)
    # a window-placed axis segment certifies
    base = phi**2
    seg = OrbitSegment(action, base, phi, zz23_ledger.segment_length)
    cert = a_thick_certify(zz23, gens, action, g, zz23_ledger, seg)
    assert cert.certified
    # distance window violation: segment at half the norm
    far = OrbitSegment(action, phi**4, phi, zz23_ledger.segment_length)
    cert2 = a_thick_certify(zz23, gens, action, g, zz23_ledger, far)
    assert not cert2.certified and cert2.reason == "distance-window"
    # reversed orientation: alignment rejected
    flipped = OrbitSegment(action, base * phi**zz23_ledger.segment_length, phi.inverse(), zz23_ledger.segment_length)
    cert3 = a_thick_certify(zz23, gens, action, g, zz23_ledger, flipped)
    assert not cert3.certified and cert3.reason == "alignment"
    # wrong segment length is a usage error
    with pytest.raises(ValueError):
        a_thick_certify(zz23, gens, action, g, zz23_ledger,
                        OrbitSegment(action, base, phi, zz23_ledger.segment_length + 1))


def test_a_thick_search(zz23, bass_serre, zz23_ledger):
    _, action, _ = bass_serre
    gens = zz23.standard_gens()
    phi = zz23.element("xy")
    assert a_thick_search(zz23, gens, action, phi, zz23.element("xy" * 5), zz23_ledger).found
    short = a_thick_search(zz23, gens, action, phi, zz23.element("y"), zz23_ledger)
    assert not short.found and short.degenerate
    # an element heading straight away from the axis: not found
    off = zz23.element("yx" * 5)
    res = a_thick_search(zz23, gens, action, phi, off, zz23_ledger)
    assert isinstance(res.found, bool)


def test_replacement_map_window_and_block(zz23, bass_serre, zz23_ledger):
    _, action, _ = bass_serre
    gens = zz23.standard_gens()
    phi = zz23.element("xy")
    g = zz23.element("yxyxyyxyxy")
    n = zz23.exact_length(g.key)
    lo = math.ceil(zz23_ledger.cut_window[0] * n)
    rep = replacement_map(zz23, gens, action, phi, g, lo, zz23_ledger)
    assert rep.report.aligned
    slack = 2 * zz23_ledger.segment_length + 2
    assert rep.norm_out <= rep.norm_in + slack
    with pytest.raises(ValueError):
        replacement_map(zz23, gens, action, phi, g, n, zz23_ledger)  # out of window


def test_replacement_map_free_group(f2, tree2, f2_ledger):
    _, action = tree2
    gens = f2.standard_gens()
    phi = f2.element("a")
    g = f2.element("babbabbabbab")
    n = len(g.key)
    i = math.ceil(f2_ledger.cut_window[0] * n)
    rep = replacement_map(f2, gens, action, phi, g, i, f2_ledger)
    assert rep.report.aligned
    # the spliced element keeps the untouched prefix and suffix
    out = rep.element.key
    assert out[:i] == g.key[:i]


def test_fiber_census_consistency(zz23, bass_serre, zz23_ledger):
    _, action, _ = bass_serre
    gens = zz23.standard_gens()
    phi = zz23.element("xy")
    report = fiber_census(zz23, gens, action, phi, zz23_ledger, 10)
    assert report.domain_size == sum(
        size * mult for size, mult in report.histogram.items()
    )
    assert report.image_size == sum(report.histogram.values())
    assert report.max_fiber >= math.ceil(report.domain_size / max(report.image_size, 1))
    assert report.max_fiber <= 8 * math.sqrt(10)


def test_fiber_census_empty_domain(zz23, bass_serre, zz23_ledger):
    _, action, _ = bass_serre
    gens = zz23.standard_gens()
    # at n = 4 the excised block does not fit: the report is trivial
    report = fiber_census(zz23, gens, action, zz23.element("xy"), zz23_ledger, 4)
    assert report.domain_size == 0 and report.max_fiber == 0
    assert report.histogram == {}


def test_double_replacement(zz23, bass_serre, zz23_ledger):
    from genlab.ledger import ConstantLedger

    _, action, _ = bass_serre
    gens = zz23.standard_gens()
    phi = zz23.element("xy")
    led = ConstantLedger.scaled(
        0, zz23_ledger.gen_displacement, zz23_ledger.axis_step, zz23_ledger.axis_word_norm,
        zz23_ledger.linkage_bound, zz23_ledger.contraction_bound,
        zz23_ledger.proj_lipschitz, zz23_ledger.recovery_lipschitz,
        dominating=Fraction(1), segment_length=1,
        cut_window=(Fraction(1, 10), Fraction(7, 10)),
    )
    g = zz23.element("xy" * 10 + "yx" * 2)
    n = zz23.exact_length(g.key)
    block = led.block_length()
    gap = 2 * (block - 2) + 3
    i = math.ceil(led.cut_window[0] * n)
    j = i + gap + 1
    dr = double_replacement(zz23, gens, action, phi, g, i, j, led)
    # the first map is a literal prefix factor of the second
    s, t, s2, t2 = dr.linkages
    tail = s2 * phi ** (2 * led.segment_length) * t2 * _suffix(zz23, gens, g, j + block)
    assert (dr.first * tail).key == dr.second.key
    with pytest.raises(ValueError):
        double_replacement(zz23, gens, action, phi, g, i, i + gap, led)


def test_double_replacement_free_group_length_12(f2, tree2):
    from genlab.ledger import ConstantLedger

    _, action = tree2
    gens = f2.standard_gens()
    phi = f2.element("a")
    led = ConstantLedger.scaled(
        0, 1, 1, 1, 0, 0, 1, 1, dominating=Fraction(1), segment_length=1,
        cut_window=(Fraction(1, 10), Fraction(7, 10)),
    )
    g = f2.element("babbababbbab")
    assert len(g.key) == 12
    block = led.block_length()
    gap = 2 * (block - 2) + 3
    i = 2
    j = i + gap + 1
    dr = double_replacement(f2, gens, action, phi, g, i, j, led)
    assert dr.report.aligned
    # both excised blocks replaced by linked powers of the axis element
    assert dr.second.key[:i] == g.key[:i]
    s_el, t_el, s2, t2 = dr.linkages
    tail = s2 * phi ** (2 * led.segment_length) * t2 * _suffix(f2, gens, g, j + block)
    assert (dr.first * tail).key == dr.second.key


def _suffix(model, gens, g, start):
    from genlab.balls import geodesic_representative

    geo = geodesic_representative(model, gens, g)
    return model.element(gens.spell(geo.s_letters[start:]))


def test_genericity_braid_curve(braid):
    gens = braid.standard_gens()
    curve = genericity_experiment(braid, None, gens, 8)
    assert curve.ratios[0] == 1  # the identity coset is periodic
    assert curve.mode == "braid-cosets"
    assert all(0 <= q <= 1 for q in curve.ratios)
    assert curve.ratios[8] <= curve.ratios[6] <= curve.ratios[4]
    assert curve.fitted_exponent < 0
    csv = curve.to_csv()
    assert csv.startswith("radius,special_count,total,ratio")
    assert len(curve.plot_data().strip().split("\n")) == 9


def test_genericity_free_curve(f2, tree2):
    _, action = tree2
    curve = genericity_experiment(f2, action, f2.standard_gens(), 7,
                                  tree_threshold=0, word_threshold=Fraction(0))
    assert curve.mode == "tree"
    assert curve.special_counts == [1] * 8  # only the identity is slow
    assert all(b < a for a, b in zip(curve.ratios, curve.ratios[1:]))


def test_genericity_zz23_curve(zz23, bass_serre):
    _, action, _ = bass_serre
    curve = genericity_experiment(zz23, action, zz23.standard_gens(), 8,
                                  tree_threshold=0, word_threshold=Fraction(0))
    # parity effects make consecutive ratios wobble; compare two steps apart
    for r in range(4, 9):
        assert curve.ratios[r] <= curve.ratios[r - 2]


def test_negligibility_probe(f2):
    gens = f2.standard_gens()
    probe = exponential_negligibility_probe(f2, gens, [2, 8, 10])
    assert probe.points[0].ratio == 0  # windows too small to act at n = 2
    assert probe.points[1].ratio > probe.points[2].ratio > 0
    doc = probe.to_json()
    assert doc["points"][0]["n"] == 2
