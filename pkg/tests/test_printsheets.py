"""Print-and-play SVG export."""

import xml.etree.ElementTree as ET

import pytest

from ai_audit.catalog import Catalog, Feature, default_catalog
from ai_audit.errors import InvalidCatalogError
from ai_audit.printsheets import StyleOptions, export_print_sheets

SVG = "{http://www.w3.org/2000/svg}"


@pytest.fixture(scope="module")
def sheets(tmp_path_factory):
    out = tmp_path_factory.mktemp("sheets")
    return export_print_sheets(default_catalog(), out)


def _cards(path):
    root = ET.parse(path).getroot()
    return [g for g in root.iter(f"{SVG}g") if g.get("class") == "card"]


def test_emits_all_documents(sheets):
    assert set(sheets) == {"businesses", "harms", "features", "rules", "index"}
    for path in sheets.values():
        assert path.exists() and path.stat().st_size > 0


def test_business_sheet_has_14_cards(sheets):
    assert len(_cards(sheets["businesses"])) == 14


def test_harm_sheet_renders_three_copies_plus_wild(sheets):
    assert len(_cards(sheets["harms"])) == 13 * 3 + 1


def test_feature_sheet_renders_two_copies_plus_wilds(sheets):
    assert len(_cards(sheets["features"])) == 7 * 2 + 2


def test_harm_badges_pair_unique_color_and_shape(sheets):
    root = ET.parse(sheets["harms"]).getroot()
    badges = [g for g in root.iter(f"{SVG}g") if g.get("class") == "badge"]
    pairs = {(b.get("data-color"), b.get("data-shape")) for b in badges}
    assert len(pairs) == 13
    assert len({c for c, _ in pairs}) == 13
    assert len({s for _, s in pairs}) == 13


def test_rules_page_includes_wild_example(sheets):
    text = sheets["rules"].read_text()
    assert "Wild card example" in text
    assert "Face filters" in text


def test_index_links_every_sheet(sheets):
    html = sheets["index"].read_text()
    for name in ("businesses", "harms", "features", "rules"):
        assert f"{name}.svg" in html


def test_invalid_catalog_rejected(tmp_path):
    cat = default_catalog()
    broken = Catalog(
        cat.businesses,
        cat.harms,
        cat.features + (Feature(8, "Inert", frozenset()),),
    )
    with pytest.raises(InvalidCatalogError):
        export_print_sheets(broken, tmp_path)


def test_unwritable_output_raises(tmp_path):
    target = tmp_path / "blocked"
    target.write_text("a file, not a directory")
    with pytest.raises(OSError):
        export_print_sheets(default_catalog(), target / "sub")


def test_custom_deck_counts(tmp_path):
    style = StyleOptions(harm_copies_per_kind=1, wild_harm_copies=0)
    paths = export_print_sheets(default_catalog(), tmp_path, style)
    assert len(_cards(paths["harms"])) == 13
