"""
Print-and-play export
=====================

Writes the SVG card sheets (every physical copy, cut-out ready), the rules
page with the wild-card example, and an index. Harm badges always pair a
color with a shape so the deck stays playable without color vision.
"""

from pathlib import Path

from ai_audit import StyleOptions, default_catalog, export_print_sheets

out_dir = Path("print_sheets")
paths = export_print_sheets(default_catalog(), out_dir)

for name, path in paths.items():
    size_kb = path.stat().st_size / 1024
    print(f"  {name:12} -> {path} ({size_kb:.0f} KiB)")

print(f"\nopen {out_dir / 'index.html'} in a browser, print at 100% scale.")

# Custom deck compositions are a style option; a classroom running the fast
# variant might print only one harm copy per kind:
compact = StyleOptions(harm_copies_per_kind=1, wild_harm_copies=2)
export_print_sheets(default_catalog(), out_dir / "compact", compact)
print(f"compact variant written to {out_dir / 'compact'}")
