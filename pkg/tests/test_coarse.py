"""Fat ladders, the fat-bottleneck decision, and the constructive build.

The heavyweight grids (full implication sweeps, the 50-instance
construction battery) live in test_acceptance; here each behavior gets a
focused check, with every witness re-validated by hand rather than trusted.
"""

import json

import pytest

from bottleneck_lab.bottleneck import Ladder, point_bottleneck_exact
from bottleneck_lab.coarse import (
    EXACT_VERTEX_CAP,
    CmtResult,
    FatDecision,
    _find_separator_masks,
    _margin_pairs,
    _separates,
    asymptotic_sweep,
    cmt_construct_ladder,
    decide_fat_bottleneck,
    find_fat_ladder,
    find_separator,
    verify_fat_ladder,
)
from bottleneck_lab.corpus import connected_graphs_up_to
from bottleneck_lab.errors import BudgetExceededError, CmtPreconditionError
from bottleneck_lab.families import family_spec, generate
from bottleneck_lab.graph import Multigraph, PathWitness, mask_of, set_distance

from helpers import cycle_graph, path_graph


def gen(family, **params):
    seed = params.pop("seed", 0)
    return generate(family_spec(family, seed=seed, **params))


def ladder_recipe(k, m, M, extra=0):
    """A generator ladder sized so its rung midpoints satisfy every
    hypothesis of the constructive procedure."""
    B = 2 * (M + m + 1) + 1 + extra
    s = 2 * B - 1 + extra
    r = B - 1 + extra
    p = (k - 1) * s + 1
    g = gen("ladder", k=k, p=p, r=r, s=s)
    X = frozenset(range(p))
    Y = frozenset(range(p, 2 * p))
    R = frozenset(2 * p + i * r + r // 2 for i in range(k))
    return g, X, Y, R, m, M, B


def canonical_generator_ladder(g, k, p, r, s):
    """The ladder a generator instance was built around: full poles, the k
    construction rungs."""
    und = {tuple(sorted(e)): i for i, e in enumerate(g.edges)}

    def rung(i):
        a = i * s
        base = 2 * p + i * r
        verts = (a, *range(base, base + r), p + a)
        eids = tuple(und[tuple(sorted(pair))] for pair in zip(verts, verts[1:]))
        return PathWitness(verts, eids)

    lad = Ladder(frozenset(range(p)), frozenset(range(p, 2 * p)), tuple(rung(i) for i in range(k)))
    lad.validate(g)
    return lad


# -- verify_fat_ladder ---------------------------------------------------------


class TestVerify:
    def test_generator_ladder_boundaries(self):
        # interiors sit s+2 apart, poles r+1; with r=8, s=7 both hit 9
        g = gen("ladder", k=3, p=15, r=8, s=7)
        lad = canonical_generator_ladder(g, 3, 15, 8, 7)
        for M in (0, 1, 7, 8, 9):
            ok, why = verify_fat_ladder(g, lad, M)
            assert ok and why is None
        ok, why = verify_fat_ladder(g, lad, 10)
        assert not ok
        assert "9" in why and "10" in why

    def test_cycle_arc_ladder(self):
        g = cycle_graph(6)
        arcs = (
            PathWitness((0, 1, 2, 3), (0, 1, 2)),
            PathWitness((0, 5, 4, 3), (5, 4, 3)),
        )
        lad = Ladder(frozenset({0}), frozenset({3}), arcs)
        ok, why = verify_fat_ladder(g, lad, 2)
        assert ok and why is None
        ok, why = verify_fat_ladder(g, lad, 3)
        assert not ok
        assert "rung interiors" in why and "2 apart" in why

    def test_structural_defect_still_raises(self):
        g = cycle_graph(6)
        bad = Ladder(
            frozenset({0}),
            frozenset({3}),
            (
                PathWitness((0, 1, 2, 3), (0, 1, 2)),
                PathWitness((0, 1, 2, 3), (0, 1, 2)),
            ),
        )
        with pytest.raises(ValueError):
            verify_fat_ladder(g, bad, 1)

    def test_negative_fatness_rejected(self):
        g = cycle_graph(6)
        arcs = (
            PathWitness((0, 1, 2, 3), (0, 1, 2)),
            PathWitness((0, 5, 4, 3), (5, 4, 3)),
        )
        lad = Ladder(frozenset({0}), frozenset({3}), arcs)
        with pytest.raises(ValueError):
            verify_fat_ladder(g, lad, -1)


# -- find_fat_ladder -----------------------------------------------------------


class TestFind:
    def test_trees_certify_none(self):
        for seed in (0, 5, 9):
            t = gen("random-tree", n=20, seed=seed)
            for M in (0, 1, 3):
                assert find_fat_ladder(t, 2, M) is None

    def test_c24_two_rungs_fatness_three(self):
        g = cycle_graph(24)
        lad = find_fat_ladder(g, 2, 3)
        assert lad is not None
        ok, why = verify_fat_ladder(g, lad, 3)
        assert ok, why

    def test_generator_ladder_spacing_nine(self):
        g = gen("ladder", k=3, p=19, r=8, s=9)
        lad = find_fat_ladder(g, 3, 9)
        assert lad is not None
        ok, why = verify_fat_ladder(g, lad, 9)
        assert ok, why

    def test_width_above_plain_width_certifies_none(self):
        # the dipole pre-check closes the question without any pole scan
        assert find_fat_ladder(cycle_graph(6), 3, 1) is None
        assert find_fat_ladder(gen("ladder", k=2, p=5, r=2, s=2), 3, 1) is None

    def test_fatness_zero_is_the_plain_search(self):
        g = cycle_graph(8)
        lad = find_fat_ladder(g, 2, 0)
        assert lad is not None and lad.fatness == 0
        lad.validate(g)

    def test_cycle_fatness_threshold(self):
        # an M-fat pair of arcs needs N >= 4M - 4
        assert find_fat_ladder(cycle_graph(16), 2, 5) is not None
        assert find_fat_ladder(cycle_graph(16), 2, 6) is None

    def test_found_is_monotone_down_in_fatness(self):
        g = cycle_graph(24)
        for M in (0, 1, 2, 3):
            assert find_fat_ladder(g, 2, M) is not None

    def test_budget_raises_on_refutation_path(self):
        with pytest.raises(BudgetExceededError):
            find_fat_ladder(cycle_graph(16), 2, 6, budget=3)

    def test_validation_errors(self):
        g = cycle_graph(6)
        with pytest.raises(ValueError):
            find_fat_ladder(g, 0, 1)
        with pytest.raises(ValueError):
            find_fat_ladder(g, 2, -1)
        two = Multigraph(4, ((0, 1), (2, 3)))
        with pytest.raises(ValueError):
            find_fat_ladder(two, 2, 1)


# -- decide_fat_bottleneck -----------------------------------------------------


class TestDecide:
    def test_paths_are_yes_at_one_center(self):
        d = decide_fat_bottleneck(path_graph(9), 2, 1)
        assert d.decision == "yes"
        assert "tree fast path" in d.notes

    def test_tree_witness_centers_really_separate(self):
        t = gen("random-tree", n=18, seed=3)
        d = decide_fat_bottleneck(t, 2, 1)
        assert d.decision == "yes"
        w = d.witness
        assert w is not None and w.centers is not None
        assert _separates(t, mask_of(w.x), mask_of(w.y), mask_of(w.centers), 2)

    def test_cycle_needs_two_centers(self):
        g = cycle_graph(12)
        assert decide_fat_bottleneck(g, 1, 1).decision == "no"
        assert decide_fat_bottleneck(g, 1, 2).decision == "yes"
        assert decide_fat_bottleneck(g, 3, 1).decision == "no"

    def test_c16_fatness_four(self):
        g = cycle_graph(16)
        assert decide_fat_bottleneck(g, 4, 1).decision == "no"
        assert decide_fat_bottleneck(g, 4, 2).decision == "yes"

    def test_three_rung_ladder_beats_two_centers(self):
        g = gen("ladder", k=3, p=9, r=2, s=4)
        d = decide_fat_bottleneck(g, 1, 2)
        assert d.decision == "no"
        # the witness must be admissible and genuinely unseparable
        w = d.witness
        assert set_distance(g, w.x, w.y) >= 2
        smask, _ = _find_separator_masks(g, mask_of(w.x), mask_of(w.y), 1, 2)
        assert smask is None

    def test_two_rung_ladder_yes_at_two_centers(self):
        g = gen("ladder", k=2, p=5, r=2, s=2)
        assert decide_fat_bottleneck(g, 1, 1).decision == "no"
        d = decide_fat_bottleneck(g, 1, 2)
        assert d.decision == "yes"
        w = d.witness
        assert _separates(g, mask_of(w.x), mask_of(w.y), mask_of(w.centers), 1)

    def test_oversize_ladder_still_answers_no(self):
        # 59 vertices, past the exact-mode cap; the sound pre-pass settles it
        g = gen("ladder", k=3, p=25, r=3, s=12)
        assert g.n > EXACT_VERTEX_CAP
        d = decide_fat_bottleneck(g, 2, 2)
        assert d.decision == "no"

    def test_oversize_unresolved_reports_unknown(self):
        g = cycle_graph(50)
        d = decide_fat_bottleneck(g, 2, 2)
        assert d.decision == "unknown"
        assert any("caps" in note for note in d.notes)

    def test_fatness_zero_never_separates(self):
        # the 0-neighborhood is empty, so any admissible pair refutes
        assert decide_fat_bottleneck(path_graph(2), 0, 1).decision == "no"
        assert decide_fat_bottleneck(Multigraph(1, ()), 0, 1).decision == "yes"

    def test_budget_reports_unknown(self):
        d = decide_fat_bottleneck(cycle_graph(12), 1, 2, budget=3)
        assert d.decision == "unknown"
        assert d.pairs_examined == 3

    def test_vacuous_band_on_short_cycle(self):
        # C6 at M=2: a 2-fat ladder exists (6 >= 4M-4) yet no pair is
        # admissible (6 < 4M), so the decision is yes by emptiness. Kept
        # here as documentation; the acceptance grid avoids the band.
        g = cycle_graph(6)
        assert find_fat_ladder(g, 2, 2) is not None
        d = decide_fat_bottleneck(g, 2, 1)
        assert d.decision == "yes"
        assert any("no admissible pairs" in note for note in d.notes)

    def test_yes_monotone_in_center_budget(self):
        g = cycle_graph(12)
        assert decide_fat_bottleneck(g, 1, 2).decision == "yes"
        assert decide_fat_bottleneck(g, 1, 3).decision == "yes"

    def test_validation_errors(self):
        g = cycle_graph(6)
        with pytest.raises(ValueError):
            decide_fat_bottleneck(g, 1, 0)
        with pytest.raises(ValueError):
            decide_fat_bottleneck(g, -1, 1)
        two = Multigraph(4, ((0, 1), (2, 3)))
        with pytest.raises(ValueError):
            decide_fat_bottleneck(two, 1, 1)


class TestDecideCrossChecks:
    def test_radius_one_matches_point_bottleneck(self):
        # at M=1 the balls are the centers themselves, so the decision is
        # exactly "point bottleneck <= n"; checked over the whole small corpus
        for g in connected_graphs_up_to(6):
            if g.n < 2:
                continue
            pb, _ = point_bottleneck_exact(g)
            for n in (1, 2, 3):
                want = "yes" if pb <= n else "no"
                assert decide_fat_bottleneck(g, 1, n).decision == want

    def test_tree_fast_path_agrees_with_exhaustive_search(self):
        # the shortcut claims every admissible tree pair is one-center
        # separable; re-derive that claim without the shortcut
        for g in connected_graphs_up_to(6):
            if g.m != g.n - 1 or g.n < 2:
                continue
            subs = list(g.connected_subset_masks())
            for M in (1, 2):
                thresh = 2 * M
                near = [g.neighborhood_mask(s, thresh) for s in subs]
                for i in range(len(subs)):
                    for j in range(i + 1, len(subs)):
                        if subs[j] & near[i]:
                            continue
                        smask, _ = _find_separator_masks(g, subs[i], subs[j], M, 1)
                        assert smask is not None


# -- helpers underneath the scans ----------------------------------------------


class TestSeparatorMachinery:
    def test_find_separator_on_cycle(self):
        g = cycle_graph(12)
        s = find_separator(g, {0}, {6}, 1, 2)
        assert s is not None and len(s) <= 2
        assert _separates(g, 1 << 0, 1 << 6, mask_of(s), 1)
        assert find_separator(g, {0}, {6}, 1, 1) is None

    def test_margin_pairs_are_admissible(self):
        for g in (cycle_graph(12), gen("ladder", k=3, p=9, r=2, s=4)):
            for margin in (1, 2, 4):
                for xmask, ymask in _margin_pairs(g, margin):
                    xs = [v for v in range(g.n) if xmask >> v & 1]
                    ys = [v for v in range(g.n) if ymask >> v & 1]
                    assert xs and ys
                    assert set_distance(g, xs, ys) >= margin
                    assert g.component_mask(1 << xs[0], xmask) == xmask
                    assert g.component_mask(1 << ys[0], ymask) == ymask

    def test_margin_pairs_recover_generator_poles(self):
        # the reason this generator exists: at margin M the bisector around
        # a pole seed grows into the construction pole itself, handing the
        # ladder search its intended pole pair
        p = 19
        g = gen("ladder", k=3, p=p, r=8, s=9)
        want = (mask_of(range(p)), mask_of(range(p, 2 * p)))
        found = _margin_pairs(g, 9)
        assert want in found or (want[1], want[0]) in found


# -- the constructive procedure -------------------------------------------------


class TestCmtConstruct:
    @pytest.mark.parametrize("k,m,M,extra", [(2, 1, 1, 0), (3, 1, 1, 0), (4, 1, 1, 0), (2, 1, 2, 1), (3, 2, 2, 2)])
    def test_recipe_instances_build_and_verify(self, k, m, M, extra):
        g, X, Y, R, m, M, B = ladder_recipe(k, m, M, extra)
        res = cmt_construct_ladder(g, X, Y, R, m, M, B)
        assert isinstance(res, CmtResult)
        assert res.ladder.width == k
        assert res.centers == R
        assert not res.leftover_components
        assert res.spot_checked_sets > 0
        ok, why = verify_fat_ladder(g, res.ladder, M)
        assert ok, why
        assert X <= res.ladder.pole_x and Y <= res.ladder.pole_y

    def test_wrong_center_count(self):
        g, X, Y, R, m, M, B = ladder_recipe(2, 1, 1)
        with pytest.raises(CmtPreconditionError) as exc:
            cmt_construct_ladder(g, X, Y, set(list(R)[:1]), m, M, B)
        assert exc.value.code == "wrong-center-count"

    def test_centers_overlap_poles(self):
        g, X, Y, R, m, M, B = ladder_recipe(2, 1, 1)
        with pytest.raises(CmtPreconditionError) as exc:
            cmt_construct_ladder(g, X, Y, set(R) | {0}, m, M, B)
        assert exc.value.code == "centers-overlap-poles"

    def test_b_too_small(self):
        g, X, Y, R, m, M, B = ladder_recipe(2, 1, 1)
        with pytest.raises(CmtPreconditionError) as exc:
            cmt_construct_ladder(g, X, Y, R, m, M, 2 * (M + m + 1))
        assert exc.value.code == "b-too-small"

    def test_poles_too_close(self):
        g, X, Y, R, m, M, B = ladder_recipe(2, 1, 1)
        with pytest.raises(CmtPreconditionError) as exc:
            cmt_construct_ladder(g, frozenset({0}), frozenset({1}), R, m, M, B)
        assert exc.value.code == "poles-too-close"

    def test_centers_too_close(self):
        g, X, Y, R, m, M, B = ladder_recipe(2, 1, 1)
        r0 = min(R)
        with pytest.raises(CmtPreconditionError) as exc:
            cmt_construct_ladder(g, X, Y, {r0, r0 + 1}, m, M, B)
        assert exc.value.code == "centers-too-close"
        assert str(r0) in str(exc.value)

    def test_separation_failed(self):
        # three far-apart centers that miss rung 0 entirely: rung 0 still
        # joins the poles after their m-neighborhood is removed
        g, X, Y, R, m, M, B = ladder_recipe(3, 1, 1)
        rs = sorted(R)
        spread = {rs[1], rs[2], rs[1] - 1 + (rs[2] - rs[1]) // 2}
        with pytest.raises(CmtPreconditionError) as exc:
            cmt_construct_ladder(g, X, Y, spread, m, M, B)
        assert exc.value.code in ("separation-failed", "centers-too-close")

    def test_b_ball_system_spot_check_fires(self):
        # long rungs allow two same-rung centers far enough apart to pass
        # the distance checks, but then n = 3 balls of radius B can block
        # both rungs, contradicting the hypothesis the theorem starts from
        m, M = 1, 1
        B = 2 * (M + m + 1) + 1
        # same-rung centers at r/4 and 3r/4 sit r/2 = 2(B-m)+1 apart, just
        # over the pairwise floor, so every distance precondition passes
        r = 4 * (B - m) + 2
        s = 2 * B - 1
        p = s + 1
        g = gen("ladder", k=2, p=p, r=r, s=s)
        X = frozenset(range(p))
        Y = frozenset(range(p, 2 * p))
        base = 2 * p
        R = {base + r // 4, base + (3 * r) // 4, base + r + r // 4, base + r + (3 * r) // 4}
        with pytest.raises(CmtPreconditionError) as exc:
            cmt_construct_ladder(g, X, Y, R, m, M, B)
        assert exc.value.code == "b-ball-system-found"

    def test_pole_validation(self):
        g, X, Y, R, m, M, B = ladder_recipe(2, 1, 1)
        with pytest.raises(ValueError):
            cmt_construct_ladder(g, frozenset(), Y, R, m, M, B)
        with pytest.raises(ValueError):
            cmt_construct_ladder(g, frozenset({0, 2}), Y, R, m, M, B)


# -- sweeps ----------------------------------------------------------------------


class TestSweep:
    def test_cycle_sweep_rows(self):
        rep = asymptotic_sweep(family_spec("cycle", n=8), "n", [8, 12], [1, 2], k=2)
        assert rep.k == 2 and rep.n == 1
        assert [(r.size, r.M) for r in rep.rows] == [(8, 1), (8, 2), (12, 1), (12, 2)]
        for row in rep.rows:
            # a lone center never blocks a cycle once any pair is admissible
            assert row.max_fat_width == 2
            assert row.decision == "no"
            assert row.seconds >= 0.0

    def test_json_omits_timings(self):
        rep = asymptotic_sweep(family_spec("cycle", n=8), "n", [8], [1], k=2)
        obj = rep.to_json_obj()
        assert set(obj["rows"][0]) == {"size", "M", "max_fat_width", "decision"}
        json.dumps(obj)

    def test_parallel_matches_serial(self):
        tmpl = family_spec("cycle", n=8)
        one = asymptotic_sweep(tmpl, "n", [8, 12], [1, 2], k=2, workers=1)
        two = asymptotic_sweep(tmpl, "n", [8, 12], [1, 2], k=2, workers=2)
        assert json.dumps(one.to_json_obj(), sort_keys=True) == json.dumps(
            two.to_json_obj(), sort_keys=True
        )

    def test_budget_cells_degrade_to_unknown(self):
        # at n = 2 the yes answer needs the whole pair scan, which a tiny
        # budget interrupts; the cell records unknown instead of aborting
        rep = asymptotic_sweep(family_spec("cycle", n=8), "n", [12], [1], k=3, budget=10)
        (row,) = rep.rows
        assert row.decision == "unknown"
        assert row.max_fat_width == 2

    def test_width_below_two_rejected(self):
        with pytest.raises(ValueError):
            asymptotic_sweep(family_spec("cycle", n=8), "n", [8], [1], k=1)
