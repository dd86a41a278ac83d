import random

import pytest
from hypothesis import given, settings, strategies as st

from _support import all_core_frames
from gmlkit import oracles
from gmlkit.fixtures import figure1_kripke, section6
from gmlkit.formula import AXIOMS, Atom, instantiate, parse, random_formula
from gmlkit.kripke import KripkeModel, all_frames, eval_kripke, random_kripke
from gmlkit.neighbourhood import (CoreModel, GradeError, NeighbourhoodModel, WorldMap, bullet,
                                  check_ax5_property, check_ax6_property, check_stars,
                                  counterexample_search, eval_nbhd, extract_core,
                                  frame_validity_nbhd, is_bounded_morphism, is_graded_frame,
                                  is_monotonic, materialize, minimal_members, random_core,
                                  random_explicit, stars_hold, truth_set, unbullet, upset)
from gmlkit.semantics import frame_validity

p, q = Atom("p"), Atom("q")


# -- evaluation -------------------------------------------------------------

def test_image_frame_evaluation():
    _, F2, _ = section6()
    m = F2.with_val({"p": ["c"]})
    assert eval_nbhd(m, "c", parse("(dia 2 p)"))
    assert not eval_nbhd(m, "c", parse("(dia 1 (not p))"))


def test_grade_above_max_is_an_error():
    _, F2, _ = section6()
    with pytest.raises(GradeError):
        eval_nbhd(F2.with_val({"p": ["c"]}), "c", parse("(dia 3 p)"))
    with pytest.raises(GradeError):
        frame_validity_nbhd(F2, parse("(dia 3 p)"))


def test_grades_above_max_are_empty():
    _, F2, _ = section6()
    assert F2.collection("c", 3) == []


def test_dia_zero_with_full_powerset():
    m = NeighbourhoodModel(["a", "b"], 1, {}, val={"p": ["a"]})
    assert all(eval_nbhd(m, w, parse("(dia 0 p)")) for w in m.worlds)


def test_bullet_membership_counts_successors():
    m = bullet(figure1_kripke())
    assert m.core["w"] == {"u1", "u2", "u3", "u4"}
    assert truth_set(m, parse("(dia 3 p)")) == {"w"}
    assert ["u2", "u3", "u4"] in m.collection("w", 3)


# -- membership shortcut, core uniqueness -----------------------------------

def test_membership_shortcut_matches_upset():
    for k in range(5):
        ws = [f"w{i}" for i in range(k)]
        for a in oracles.powerset(ws):
            m = CoreModel(ws, {ws[0]: a} if ws else {})
            for n in range(k + 2):
                literal = oracles.upset_of_min_size(a, n, ws)
                if not ws:
                    continue
                shortcut = {frozenset(s) for s in m.collection(ws[0], n)}
                assert shortcut == literal


def test_core_is_unique():
    for k in range(1, 5):
        ws = [f"w{i}" for i in range(k)]
        for a in oracles.powerset(ws):
            N = max(len(a), 1)
            m = materialize(CoreModel(ws, {ws[0]: a}), N)
            assert extract_core(m, ws[0]) == a
            assert is_graded_frame(m)


# -- monotonicity -----------------------------------------------------------

def test_bullet_is_monotonic():
    rng = random.Random(1)
    for _ in range(30):
        m = bullet(random_kripke(rng, rng.randint(1, 4)))
        assert is_monotonic(m)
        assert is_monotonic(materialize(m))


def test_monotonic_violation():
    m = NeighbourhoodModel(["a", "b"], 1, {("a", 1): [["a"]]})
    v = is_monotonic(m)
    assert v.status == "violation"
    assert v.detail["missing_superset"] == ["a", "b"]


def test_image_frame_is_monotonic():
    assert is_monotonic(section6()[1])


# -- gradedness and stars ---------------------------------------------------

def test_graded_frame_with_non_graded_image():
    F, F2, f = section6()
    v = is_graded_frame(F)
    assert v.status == "yes"
    assert v.detail["core"] == {"a": ["a", "b"], "b": ["a", "b"]}
    v2 = is_graded_frame(F2)
    assert v2.status == "no"
    assert v2.detail["grade"] == 2 and v2.detail["witness"] == ["c"]
    stars = check_stars(F2)
    assert stars["star5"].status == "violation"
    assert stars["star5"].detail["world"] == "c" and stars["star5"].detail["grade"] == 2
    m = is_bounded_morphism(f, F, F2)
    assert m.status == "pass" and m.detail["surjective"]


def test_edgeless_core_is_empty():
    m = bullet(KripkeModel(["a", "b"]))
    assert m.core == {"a": frozenset(), "b": frozenset()}
    assert m.collection("a", 1) == []


def test_complete_two_world_frame_has_full_cores():
    m = bullet(KripkeModel(["a", "b"], [(x, y) for x in "ab" for y in "ab"]))
    assert m == section6()[0]


def test_stars_on_materialized_bullets():
    rng = random.Random(12)
    for _ in range(60):
        m = materialize(bullet(random_kripke(rng, rng.randint(1, 4))))
        assert stars_hold(check_stars(m))


def test_star1_violation():
    m = NeighbourhoodModel(["a"], 1, {("a", 1): [["a"]]}, nu0={"a": [[]]})
    assert check_stars(m)["star1"].status == "violation"
    assert not is_graded_frame(m)


def test_star3_violation():
    m = NeighbourhoodModel(["a"], 1, {("a", 1): [[], ["a"]]})
    assert check_stars(m)["star3"].status == "violation"


def test_stars_agree_with_gradedness_on_all_small_materializations():
    for k in range(1, 4):
        for core in all_core_frames(k):
            for N in range(1, 4):
                m = materialize(core, N)
                assert stars_hold(check_stars(m)) == bool(is_graded_frame(m))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**6))
def test_stars_agree_with_gradedness_random(seed):
    rng = random.Random(seed)
    m = random_explicit(rng, rng.randint(1, 4), rng.randint(1, 3))
    assert stars_hold(check_stars(m)) == bool(is_graded_frame(m))


def test_minimal_members():
    assert minimal_members([0b011, 0b111, 0b100]) == [0b011, 0b100]
    assert minimal_members([]) == []


def test_upset():
    assert upset([0b01], 2) == {0b01, 0b11}


# -- translations -----------------------------------------------------------

def test_translation_identities_exhaustive():
    for k in range(4):
        for frame in all_frames(k):
            assert unbullet(bullet(frame)) == frame
        for core in all_core_frames(k):
            assert bullet(unbullet(core)) == core


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_truth_preserved_by_bullet(seed):
    rng = random.Random(seed)
    m = random_kripke(rng, rng.randint(1, 6), atoms=("p", "q"))
    f = random_formula(rng, 4, 4, ["p", "q"])
    b = bullet(m)
    assert all(eval_kripke(m, w, f) == eval_nbhd(b, w, f) for w in m.worlds)


def test_materialize_preserves_truth():
    rng = random.Random(21)
    for _ in range(100):
        m = random_core(rng, rng.randint(1, 4), atoms=("p", "q"))
        f = random_formula(rng, 3, 3, ["p", "q"])
        x = materialize(m, 3)
        assert all(eval_nbhd(m, w, f) == eval_nbhd(x, w, f) for w in m.worlds)


# -- Ax5 / Ax6 correspondents -----------------------------------------------

def test_ax_properties_hold_on_graded_frames():
    rng = random.Random(2)
    for _ in range(80):
        m = random_core(rng, rng.randint(1, 4), atoms=())
        assert check_ax5_property(m)
        assert check_ax6_property(m)
        assert check_ax5_property(materialize(m))
        assert check_ax6_property(materialize(m))


def test_ax5_property_implies_validity():
    rng = random.Random(6)
    hits = 0
    for _ in range(200):
        m = random_explicit(rng, rng.randint(1, 2), 2)
        if not check_ax5_property(m):
            continue
        hits += 1
        for n in range(3):
            for phi, psi in [(p, q), (q, p), (p, parse("(not q)"))]:
                f = instantiate(AXIOMS["Ax5"], {"phi": phi, "psi": psi}, {"n": n})
                assert frame_validity_nbhd(m, f)
    assert hits > 10


def test_ax6_property_implies_validity():
    rng = random.Random(7)
    hits = 0
    for _ in range(300):
        m = random_explicit(rng, rng.randint(1, 2), 3)
        if not check_ax6_property(m):
            continue
        hits += 1
        for a, b in [(0, 1), (1, 1), (1, 2), (0, 0)]:
            f = instantiate(AXIOMS["Ax6"], {"phi": p, "psi": q}, {"m": a, "n": b})
            if a + b + 1 <= m.max_grade:
                assert frame_validity_nbhd(m, f)
    assert hits > 10


def test_ax6_violated_when_higher_grades_are_missing():
    # {a} and {b} each have grade exactly 1 but their union is absent at grade 2
    m = NeighbourhoodModel(["a", "b"], 1, {("a", 1): [["a"], ["b"], ["a", "b"]]})
    assert check_ax6_property(m).status == "violation"


def test_ax5_property_on_image_frame():
    assert check_ax5_property(section6()[1])


# -- bounded morphisms ------------------------------------------------------

def test_identity_is_bounded_morphism():
    rng = random.Random(9)
    for _ in range(20):
        m = random_explicit(rng, rng.randint(1, 3), 2)
        v = is_bounded_morphism(WorldMap({w: w for w in m.worlds}), m, m)
        assert v and v.detail["surjective"]


def test_bm1_violation():
    src = NeighbourhoodModel(["w"], 1, {("w", 1): [["w"]]})
    dst = NeighbourhoodModel(["v"], 1, {})
    v = is_bounded_morphism(WorldMap({"w": "v"}), src, dst)
    assert v.status == "violation" and v.detail["clause"] == "BM1" and v.detail["grade"] == 1


def test_bm2_violation():
    src = NeighbourhoodModel(["w"], 1, {})
    dst = NeighbourhoodModel(["v"], 1, {("v", 1): [["v"]]})
    v = is_bounded_morphism(WorldMap({"w": "v"}), src, dst)
    assert v.detail["clause"] == "BM2"


def test_partial_map_rejected():
    F, F2, _ = section6()
    assert is_bounded_morphism(WorldMap({"a": "c"}), F, F2).detail["clause"] == "total"


def _valid(frame, f):
    return bool(frame_validity(frame, f))


def test_morphism_validity_transfer():
    rng = random.Random(0)
    transfers = 0
    for _ in range(3000):
        N = rng.randint(1, 2)
        src = random_explicit(rng, rng.randint(1, 3), N)
        dst = random_explicit(rng, rng.randint(1, 2), N, prefix="v")
        f = WorldMap({w: rng.choice(dst.worlds) for w in src.worlds})
        if not (is_monotonic(src) and is_monotonic(dst)):
            continue
        v = is_bounded_morphism(f, src, dst)
        if not (v and v.detail["surjective"]):
            continue
        for _ in range(10):
            phi = random_formula(rng, 3, N, ["p"])
            if _valid(src, phi):
                transfers += 1
                assert _valid(dst, phi)
    assert transfers > 100


def test_transfer_needs_monotonic_source():
    # src is not closed under supersets, so images of truth sets do not pull back
    src = NeighbourhoodModel(["w0", "w1"], 1, {("w0", 1): [["w1"]], ("w1", 1): [["w0"]]})
    dst = NeighbourhoodModel(["v0"], 1, {("v0", 1): [["v0"]]}, nu0={"v0": [[], ["v0"]]})
    f = WorldMap({"w0": "v0", "w1": "v0"})
    assert is_bounded_morphism(f, src, dst).detail["surjective"]
    phi = parse("(imp (dia 1 p) (not p))")
    assert _valid(src, phi) and not _valid(dst, phi)


def test_validity_transfers_to_image_frame():
    F, F2, _ = section6()
    rng = random.Random(3)
    for _ in range(300):
        phi = random_formula(rng, 3, 2, ["p", "q"])
        if _valid(F, phi):
            assert _valid(F2, phi)


# -- countermodel search ----------------------------------------------------

SEP2 = parse("(imp (and (dia 2 p) (dia 2 (not p))) (or (dia 2 q) (dia 2 (not q))))")


def test_separation_valid_on_graded_frames_up_to_five():
    rng = random.Random(5)
    for k in range(1, 4):
        for core in all_core_frames(k):
            assert frame_validity(core, SEP2)
    for _ in range(40):
        assert frame_validity(random_core(rng, 5, atoms=()), SEP2)


def test_separation_countermodel_found():
    v = counterexample_search(SEP2, max_worlds=4, budget=10**5, seed=0)
    assert v.status == "countermodel"
    model, w = v.detail["model"], v.detail["world"]
    assert len(model.worlds) <= 4 and v.detail["candidates"] <= 10**5
    assert is_monotonic(model)
    assert not eval_nbhd(model, w, SEP2)


def test_search_on_valid_formulas():
    assert counterexample_search(parse("top"), 2, 2000).status == "not_found"
    ax4 = instantiate(AXIOMS["Ax4"], {"phi": p}, {"n": 1})
    assert counterexample_search(ax4, 3, 5000, frame_class="graded").status == "not_found"
    assert counterexample_search(parse("bot"), 1, 10).status == "countermodel"


def test_search_rejects_unknown_class():
    with pytest.raises(ValueError):
        counterexample_search(parse("top"), frame_class="kripke")


def test_model_validation():
    with pytest.raises(ValueError):
        NeighbourhoodModel(["a"], 1, {("a", 2): [["a"]]})
    with pytest.raises(ValueError):
        NeighbourhoodModel(["a"], 1, {("b", 1): [["a"]]})
    with pytest.raises(ValueError):
        CoreModel(["a"], {"z": ["a"]})
