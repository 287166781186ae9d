"""Stratified-covering posets: validation, bounds, builtins, documents."""

import json

import pytest

from geoplan.strat_cover import (
    CoverMap,
    PosetElement,
    PosetFlags,
    StratPoset,
    builtin_poset,
    from_document,
    inconsistent_at,
    loads_document,
    lower_bound,
    to_document,
    upper_bound_if_trivial,
    validate_poset,
)

#: name -> (lower bound, element count, flag triple)
BUILTINS = {
    "circle": (1, 3, (True, True, True)),
    "torus_corner:1": (1, 3, (True, True, True)),
    "torus_corner:2": (2, 9, (True, True, True)),
    "torus_corner:3": (3, 27, (True, True, True)),
    "torus_corner:4": (4, 81, (True, True, True)),
    "klein_S4": (3, 15, (False, True, True)),
    "cube_corner": (3, 22, (False, False, False)),
}


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtin_bounds_and_shapes(name):
    bound, size, flag_triple = BUILTINS[name]
    poset, flags = builtin_poset(name)
    assert validate_poset(poset).ok
    assert len(poset.elements) == size
    report = lower_bound(poset)
    assert report.valid
    assert report.lower_bound == bound
    assert report.levels == bound + 1
    assert (
        flags.trivial_coverings,
        flags.locally_compact,
        flags.nonempty_intersections,
    ) == flag_triple


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_equality_certificate_requires_all_flags(name):
    bound, _, flag_triple = BUILTINS[name]
    poset, flags = builtin_poset(name)
    upper = upper_bound_if_trivial(poset, flags)
    if all(flag_triple):
        assert upper == bound
    else:
        assert upper is None


def test_unknown_builtin_rejected():
    with pytest.raises(ValueError):
        builtin_poset("mystery")
    with pytest.raises(ValueError):
        builtin_poset("torus_corner:0")


def test_bottom_elements_are_never_inconsistent():
    for name in BUILTINS:
        poset, _ = builtin_poset(name)
        bottom = min(poset.levels)
        for e in poset.elements:
            if e.level == bottom:
                assert not inconsistent_at(poset, e.id)


def test_inconsistency_requires_incoming_maps():
    poset = StratPoset(
        [
            PosetElement("low", 1, ("s",)),
            PosetElement("high", 2, ("t",)),
        ],
        [],
    )
    # no incoming covers at "high": vacuously consistent, so no bound
    assert not inconsistent_at(poset, "high")
    report = lower_bound(poset)
    assert report.lower_bound is None
    assert report.consistent_above_bottom == ("high",)


def test_two_sided_images_with_empty_intersection_are_inconsistent():
    poset = StratPoset(
        [
            PosetElement("left", 1, ("l",)),
            PosetElement("right", 1, ("r",)),
            PosetElement("top", 2, ("a", "b")),
        ],
        [
            CoverMap("left", "top", {"l": "a"}),
            CoverMap("right", "top", {"r": "b"}),
        ],
    )
    # images inside the *top* element's sheets: {a} and {b}, disjoint
    assert inconsistent_at(poset, "top")
    report = lower_bound(poset)
    assert report.lower_bound == 1


class TestValidationRejections:
    def test_level_skip(self):
        poset = StratPoset(
            [
                PosetElement("a", 1, ("s",)),
                PosetElement("b", 2, ("t",)),
                PosetElement("c", 3, ("u",)),
            ],
            [CoverMap("a", "c", {"s": "u"})],
        )
        report = validate_poset(poset)
        assert not report.ok
        assert any("adjacent levels" in e for e in report.errors)

    def test_non_contiguous_levels(self):
        poset = StratPoset(
            [PosetElement("a", 1, ("s",)), PosetElement("b", 3, ("t",))],
            [],
        )
        report = validate_poset(poset)
        assert not report.ok
        assert any("contiguous" in e for e in report.errors)

    def test_non_injective_sheet_map(self):
        poset = StratPoset(
            [
                PosetElement("a", 1, ("p", "q")),
                PosetElement("b", 2, ("r", "r2")),
            ],
            [CoverMap("a", "b", {"p": "r", "q": "r"})],
        )
        report = validate_poset(poset)
        assert not report.ok
        assert any("injective" in e for e in report.errors)

    def test_composition_conflict(self):
        poset = StratPoset(
            [
                PosetElement("a", 1, ("s",)),
                PosetElement("b1", 2, ("t1",)),
                PosetElement("b2", 2, ("t2",)),
                PosetElement("c", 3, ("u", "v")),
            ],
            [
                CoverMap("a", "b1", {"s": "t1"}),
                CoverMap("a", "b2", {"s": "t2"}),
                CoverMap("b1", "c", {"t1": "u"}),
                CoverMap("b2", "c", {"t2": "v"}),
            ],
        )
        report = validate_poset(poset)
        assert not report.ok
        assert any("composition" in e for e in report.errors)

    def test_dangling_cover_reference(self):
        poset = StratPoset(
            [PosetElement("a", 1, ("s",))],
            [CoverMap("ghost", "a", {"x": "s"})],
        )
        report = validate_poset(poset)
        assert not report.ok
        assert any("missing element" in e for e in report.errors)

    def test_map_must_be_total_on_source_sheets(self):
        poset = StratPoset(
            [PosetElement("a", 1, ("s",)), PosetElement("b", 2, ("t",))],
            [CoverMap("a", "b", {"bogus": "t"})],
        )
        report = validate_poset(poset)
        assert not report.ok
        assert any("total" in e for e in report.errors)

    def test_invalid_poset_yields_no_bound(self):
        poset = StratPoset(
            [
                PosetElement("a", 1, ("s",)),
                PosetElement("b", 2, ("t",)),
                PosetElement("c", 3, ("u",)),
            ],
            [CoverMap("a", "c", {"s": "u"})],
        )
        report = lower_bound(poset)
        assert not report.valid
        assert report.lower_bound is None
        with pytest.raises(ValueError):
            upper_bound_if_trivial(poset, PosetFlags(True, True, True))


def test_relabel_invariance():
    poset, _ = builtin_poset("torus_corner:2")
    rename = {e.id: f"cell_{i}" for i, e in enumerate(poset.elements)}
    sheet_rename = {
        (e.id, s): f"sheet_{i}_{j}"
        for i, e in enumerate(poset.elements)
        for j, s in enumerate(e.sheets)
    }
    relabeled = StratPoset(
        [
            PosetElement(
                rename[e.id],
                e.level,
                tuple(sheet_rename[(e.id, s)] for s in e.sheets),
            )
            for e in poset.elements
        ],
        [
            CoverMap(
                rename[c.src],
                rename[c.dst],
                {
                    sheet_rename[(c.src, k)]: sheet_rename[(c.dst, v)]
                    for k, v in c.mapping.items()
                },
            )
            for c in poset.covers
        ],
    )
    assert validate_poset(relabeled).ok
    assert lower_bound(relabeled).lower_bound == lower_bound(poset).lower_bound


def test_monotonicity_under_top_level_removal():
    for name, (bound, _, _) in BUILTINS.items():
        if bound < 2:
            continue
        poset, _ = builtin_poset(name)
        top = max(poset.levels)
        trimmed = StratPoset(
            [e for e in poset.elements if e.level < top],
            [c for c in poset.covers if poset.by_id[c.dst].level < top],
        )
        report = lower_bound(trimmed)
        assert report.valid, name
        assert report.lower_bound == bound - 1, name


class TestDocuments:
    def test_round_trip_preserves_bounds(self):
        for name in BUILTINS:
            poset, flags = builtin_poset(name)
            text = json.dumps(to_document(poset, flags))
            back, back_flags = loads_document(text)
            assert lower_bound(back).lower_bound == lower_bound(poset).lower_bound
            assert back_flags == flags

    def test_malformed_json_rejected(self):
        with pytest.raises(ValueError):
            loads_document("{not json")

    def test_wrong_shape_rejected(self):
        with pytest.raises(ValueError):
            from_document([1, 2, 3])
        with pytest.raises(ValueError):
            from_document({"elements": [{"id": "a"}]})

    def test_missing_flags_default_to_false(self):
        poset, _ = builtin_poset("circle")
        doc = to_document(poset, PosetFlags(True, True, True))
        del doc["flags"]
        _, flags = from_document(doc)
        assert flags == PosetFlags(False, False, False)
