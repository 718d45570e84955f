"""Regenerate src/cards_data.ts from the engine's default catalog.

Run from the frontend directory:  python3 scripts/gen_cards_data.py
"""

import json
from pathlib import Path

from ai_audit.catalog import default_catalog


def main() -> None:
    catalog = default_catalog()
    data = {
        "businesses": {
            str(b.id): {"title": b.title, "harms": sorted(b.vulnerable_harms)}
            for b in catalog.businesses
        },
        "harms": {
            str(h.id): {"title": h.title, "color": h.color, "shape": h.shape}
            for h in catalog.harms
        },
        "features": {
            str(f.id): {"title": f.title, "counters": sorted(f.counters)}
            for f in catalog.features
        },
        "copies": {"harm": 3, "feature": 2, "wildHarm": 1, "wildFeature": 2},
    }
    body = json.dumps(data, indent=2, ensure_ascii=False)
    out = Path(__file__).resolve().parent.parent / "src" / "cards_data.ts"
    out.write_text(
        "// Generated by scripts/gen_cards_data.py from the engine's default\n"
        "// catalog. Do not edit by hand; regenerate after catalog changes.\n"
        f"export const CARDS_DATA = {body} as const;\n",
        encoding="utf-8",
    )
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
