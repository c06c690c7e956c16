import pytest

from orelab.catalog import (BUILTIN_SCAN_NAMES, CatalogError, builtin, builtin_catalog, catalog_hash, format_catalog,
                            parse_catalog)


@pytest.mark.parametrize("name,order", [("C1", 1), ("C30", 30), ("D5", 10), ("S4", 24), ("A5", 60), ("Q8", 8),
                                        ("SL(2,3)", 24), ("Z/2×Z/2", 4), ("V4", 4), ("S3xC2", 12),
                                        ("C2xC2xC2", 8), ("S7", 5040)])
def test_builtin_orders(name, order):
    assert builtin(name).build().order == order


def test_bad_names():
    for bad in ("S8", "D2", "X3", "C0", ""):
        with pytest.raises(CatalogError):
            builtin(bad)


def test_parse_roundtrip():
    text = "# comment\nS4; 4; (0 1),(0 1 2 3)\n\nC12\nS3; 3; (0 1),(0 1 2); (0 1)\n"
    entries = parse_catalog(text)
    assert [e.name for e in entries] == ["S4", "C12", "S3"]
    assert entries[2].subgroup is not None and len(entries[2].subgroup) == 1
    again = parse_catalog(format_catalog(entries))
    assert again == entries
    assert catalog_hash(again) == catalog_hash(entries)


def test_parse_errors_name_line():
    with pytest.raises(CatalogError, match="line 2"):
        parse_catalog("C3\nS4; four; (0 1)\n")


def test_builtin_catalog_is_stable():
    entries = builtin_catalog()
    assert [e.name for e in entries] == list(BUILTIN_SCAN_NAMES)
    assert catalog_hash(entries) == catalog_hash(builtin_catalog())
    assert len(catalog_hash(entries)) == 64
