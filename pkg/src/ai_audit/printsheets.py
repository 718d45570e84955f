"""Print-and-play export: SVG card sheets plus a rules page and an index.

One sheet per card family, each card as a cut-out rectangle showing the title,
the harm badges (color AND shape, so the deck works without color vision) and
the number of copies in the standard deck. Every physical copy is rendered,
so printing the sheets yields a complete deck.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

from .catalog import Catalog, Harm, validate
from .errors import InvalidCatalogError

MM = 3.7795  # CSS px per millimetre


@dataclass
class StyleOptions:
    """Layout knobs and the deck composition stamped on the cards."""

    card_width: float = 63.0  # mm
    card_height: float = 88.0  # mm
    columns: int = 3
    margin: float = 8.0  # mm
    gap: float = 4.0  # mm
    harm_copies_per_kind: int = 3
    feature_copies_per_kind: int = 2
    wild_harm_copies: int = 1
    wild_feature_copies: int = 2


def _wrap(text: str, width_chars: int) -> list[str]:
    lines, line = [], ""
    for word in text.split():
        candidate = f"{line} {word}".strip()
        if len(candidate) > width_chars and line:
            lines.append(line)
            line = word
        else:
            line = candidate
    if line:
        lines.append(line)
    return lines


def shape_glyph(shape: str, cx: float, cy: float, r: float, fill: str) -> str:
    """SVG fragment for one badge glyph centered at (cx, cy) with radius r."""
    if shape == "circle":
        return f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{r:.1f}" fill="{fill}"/>'
    if shape == "ring":
        return (
            f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{r * 0.8:.1f}" fill="none" '
            f'stroke="{fill}" stroke-width="{r * 0.45:.1f}"/>'
        )
    if shape == "square":
        s = r * 1.7
        return (
            f'<rect x="{cx - s / 2:.1f}" y="{cy - s / 2:.1f}" width="{s:.1f}" '
            f'height="{s:.1f}" fill="{fill}"/>'
        )
    if shape == "crescent":
        return (
            f'<path d="M {cx + r * 0.5:.1f} {cy - r * 0.8:.1f} '
            f'A {r:.1f} {r:.1f} 0 1 0 {cx + r * 0.5:.1f} {cy + r * 0.8:.1f} '
            f'A {r * 0.75:.1f} {r * 0.75:.1f} 0 1 1 {cx + r * 0.5:.1f} '
            f'{cy - r * 0.8:.1f} Z" fill="{fill}"/>'
        )
    if shape == "heart":
        return (
            f'<path d="M {cx:.1f} {cy + r:.1f} '
            f'C {cx - r * 1.6:.1f} {cy - r * 0.3:.1f} {cx - r * 0.6:.1f} '
            f'{cy - r * 1.3:.1f} {cx:.1f} {cy - r * 0.3:.1f} '
            f'C {cx + r * 0.6:.1f} {cy - r * 1.3:.1f} {cx + r * 1.6:.1f} '
            f'{cy - r * 0.3:.1f} {cx:.1f} {cy + r:.1f} Z" fill="{fill}"/>'
        )
    if shape == "teardrop":
        return (
            f'<path d="M {cx:.1f} {cy - r:.1f} '
            f'C {cx + r:.1f} {cy:.1f} {cx + r * 0.8:.1f} {cy + r:.1f} '
            f'{cx:.1f} {cy + r:.1f} '
            f'C {cx - r * 0.8:.1f} {cy + r:.1f} {cx - r:.1f} {cy:.1f} '
            f'{cx:.1f} {cy - r:.1f} Z" fill="{fill}"/>'
        )

    def polygon(points: list[tuple[float, float]]) -> str:
        coords = " ".join(f"{x:.1f},{y:.1f}" for x, y in points)
        return f'<polygon points="{coords}" fill="{fill}"/>'

    if shape == "triangle":
        return polygon([(cx, cy - r), (cx + r, cy + r * 0.8), (cx - r, cy + r * 0.8)])
    if shape == "diamond":
        return polygon([(cx, cy - r), (cx + r * 0.75, cy), (cx, cy + r), (cx - r * 0.75, cy)])
    if shape == "pentagon":
        return polygon(_regular(cx, cy, r, 5))
    if shape == "hexagon":
        return polygon(_regular(cx, cy, r, 6))
    if shape == "star":
        import math

        points = []
        for k in range(10):
            radius = r if k % 2 == 0 else r * 0.45
            angle = -math.pi / 2 + k * math.pi / 5
            points.append((cx + radius * math.cos(angle), cy + radius * math.sin(angle)))
        return polygon(points)
    if shape == "cross":
        a = r * 0.45
        return polygon(
            [
                (cx - a, cy - r), (cx + a, cy - r), (cx + a, cy - a),
                (cx + r, cy - a), (cx + r, cy + a), (cx + a, cy + a),
                (cx + a, cy + r), (cx - a, cy + r), (cx - a, cy + a),
                (cx - r, cy + a), (cx - r, cy - a), (cx - a, cy - a),
            ]
        )
    if shape == "arrow":
        a = r * 0.45
        return polygon(
            [
                (cx, cy - r), (cx + r, cy + a * 0.2), (cx + a, cy + a * 0.2),
                (cx + a, cy + r), (cx - a, cy + r), (cx - a, cy + a * 0.2),
                (cx - r, cy + a * 0.2),
            ]
        )
    # Unknown token: render a labelled circle rather than failing the export.
    return (
        f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{r:.1f}" fill="{fill}" '
        f'stroke="black" stroke-dasharray="2,2"/>'
    )


def _regular(cx: float, cy: float, r: float, n: int) -> list[tuple[float, float]]:
    import math

    return [
        (
            cx + r * math.cos(-math.pi / 2 + 2 * math.pi * k / n),
            cy + r * math.sin(-math.pi / 2 + 2 * math.pi * k / n),
        )
        for k in range(n)
    ]


def _badge(harm: Harm, x: float, y: float) -> str:
    # 7mm badge: glyph with the harm id printed underneath.
    glyph = shape_glyph(harm.shape, x * MM, y * MM, 3.0 * MM, harm.color)
    label = (
        f'<text x="{x * MM:.1f}" y="{(y + 5.4) * MM:.1f}" font-size="{2.8 * MM:.1f}" '
        f'text-anchor="middle" font-family="Helvetica, Arial, sans-serif">'
        f"{harm.id}</text>"
    )
    return f'<g class="badge" data-shape="{harm.shape}" data-color="{harm.color}">{glyph}{label}</g>'


def _card(
    style: StyleOptions,
    x: float,
    y: float,
    family: str,
    heading: str,
    title: str,
    badges: list[Harm],
    copies: int,
    wild: bool = False,
) -> str:
    w, h = style.card_width, style.card_height
    parts = [
        f'<g class="card" data-family="{family}">',
        f'<rect x="{x * MM:.1f}" y="{y * MM:.1f}" width="{w * MM:.1f}" '
        f'height="{h * MM:.1f}" rx="{3 * MM:.1f}" fill="white" stroke="black" '
        f'stroke-width="1"/>',
        f'<text x="{(x + 4) * MM:.1f}" y="{(y + 7) * MM:.1f}" '
        f'font-size="{3.2 * MM:.1f}" font-weight="bold" '
        f'font-family="Helvetica, Arial, sans-serif">{escape(heading)}</text>',
        f'<text x="{(x + w - 4) * MM:.1f}" y="{(y + 7) * MM:.1f}" '
        f'font-size="{3.0 * MM:.1f}" text-anchor="end" '
        f'font-family="Helvetica, Arial, sans-serif">x{copies}</text>',
    ]
    text_y = y + 15
    for line in _wrap(title, 34)[:7]:
        parts.append(
            f'<text x="{(x + 4) * MM:.1f}" y="{text_y * MM:.1f}" '
            f'font-size="{3.0 * MM:.1f}" '
            f'font-family="Helvetica, Arial, sans-serif">{escape(line)}</text>'
        )
        text_y += 4.5
    if wild:
        parts.append(
            f'<text x="{(x + w / 2) * MM:.1f}" y="{(y + h / 2 + 6) * MM:.1f}" '
            f'font-size="{8 * MM:.1f}" text-anchor="middle" fill="dimgray" '
            f'font-family="Helvetica, Arial, sans-serif">?</text>'
        )
    bx = x + 8
    by = y + h - 14
    for harm in badges:
        parts.append(_badge(harm, bx, by))
        bx += 9.5
        if bx > x + w - 6:
            bx = x + 8
            by -= 11
    parts.append("</g>")
    return "".join(parts)


def _sheet(style: StyleOptions, cards: list[str], rows: int) -> str:
    width = style.margin * 2 + style.columns * style.card_width + (style.columns - 1) * style.gap
    height = style.margin * 2 + rows * (style.card_height + style.gap)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width:.0f}mm" height="{height:.0f}mm" '
        f'viewBox="0 0 {width * MM:.0f} {height * MM:.0f}">'
        f'<rect width="100%" height="100%" fill="#f4f4f4"/>' + "".join(cards) + "</svg>"
    )


def _grid_positions(style: StyleOptions, count: int):
    for index in range(count):
        row, col = divmod(index, style.columns)
        x = style.margin + col * (style.card_width + style.gap)
        y = style.margin + row * (style.card_height + style.gap)
        yield x, y


_RULES = [
    ("Setup",
     "Deal every business card out evenly; extras go back in the box. Shuffle "
     "the harm deck and the feature deck separately. Each player draws 2 harm "
     "cards and 3 feature cards, keeps their hands secret, and sets up one "
     "business face down. Reveal all businesses once everyone has set up."),
    ("On your turn",
     "Either set up another business (you may set up more than one), or play "
     "one harm card against another player's business. A harm can only target "
     "a business whose badge list includes that harm. Describe how the harm "
     "shows up for that business; the guide booklet has real-world examples. "
     "If you have no business in play you must set one up."),
    ("Defending",
     "The challenged player may answer with a feature card whose badge list "
     "includes the attacking harm. If they do, the challenge fails: both "
     "cards go under their decks and each player draws a replacement. If "
     "they cannot (or choose not to) defend, the business goes to the "
     "discard pile."),
    ("Wild cards",
     "A wild card stands for a harm or feature you invent. Narrate it; it "
     "takes effect only if a majority of the other players vote that your "
     "story fits. A rejected wild card goes under its deck and you draw a "
     "replacement."),
    ("Stuck hands",
     "If none of your harm cards can target any business in play, you may "
     "spend your turn exchanging a harm card: slide it under the harm deck "
     "and draw the top card. With nothing else to do, pass the turn."),
    ("Winning",
     "When a player loses their last business and has none left in hand they "
     "are out of the game. The player with the last surviving business wins."),
    ("Wild card example",
     "Example: Rae runs the 'Face filters' business. Quinn plays the Wild "
     "Harm card and narrates: 'Your filters quietly build a face database "
     "that gets sold to advertisers - that is Leaking your personal details "
     "to other parties.' The other players vote that the story fits, so Rae "
     "must defend. Rae plays the Wild Feature card: 'All filter processing "
     "happens on the phone; no face data ever leaves the device.' The table "
     "votes again - convinced - and the challenge fails."),
]


def _rules_page(style: StyleOptions) -> str:
    width = 210.0
    y = 18.0
    parts = [
        f'<text x="{15 * MM:.1f}" y="{12 * MM:.1f}" font-size="{6 * MM:.1f}" '
        f'font-weight="bold" font-family="Helvetica, Arial, sans-serif">'
        f"AI Audit - How to play</text>"
    ]
    for heading, body in _RULES:
        parts.append(
            f'<text x="{15 * MM:.1f}" y="{y * MM:.1f}" font-size="{4 * MM:.1f}" '
            f'font-weight="bold" font-family="Helvetica, Arial, sans-serif">'
            f"{escape(heading)}</text>"
        )
        y += 6
        for line in _wrap(body, 84):
            parts.append(
                f'<text x="{15 * MM:.1f}" y="{y * MM:.1f}" font-size="{3.2 * MM:.1f}" '
                f'font-family="Helvetica, Arial, sans-serif">{escape(line)}</text>'
            )
            y += 4.6
        y += 4
    height = y + 10
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}mm" '
        f'height="{height:.0f}mm" viewBox="0 0 {width * MM:.0f} {height * MM:.0f}">'
        f'<rect width="100%" height="100%" fill="white"/>' + "".join(parts) + "</svg>"
    )


def export_print_sheets(
    catalog: Catalog,
    out_dir: str | Path,
    style: StyleOptions | None = None,
) -> dict[str, Path]:
    """Write the print sheets into out_dir and return {sheet name: path}.

    Requires a catalog that validates without errors. Raises OSError if the
    output location cannot be written.
    """
    report = validate(catalog)
    if not report.ok:
        raise InvalidCatalogError(
            "catalog has errors: " + "; ".join(m for _, m in report.errors)
        )
    style = style or StyleOptions()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    harm_of = catalog.harm_by_id

    def badge_list(ids) -> list[Harm]:
        return [harm_of[i] for i in sorted(ids)]

    business_cards = [
        ("Business", b.title, badge_list(b.vulnerable_harms), 1, False)
        for b in catalog.businesses
    ]
    harm_cards = []
    for h in catalog.harms:
        harm_cards.extend(
            [("Harm", h.title, [h], style.harm_copies_per_kind, False)]
            * style.harm_copies_per_kind
        )
    harm_cards.extend(
        [("Wild Harm", "Invent a harm and convince the table.", [],
          style.wild_harm_copies, True)] * style.wild_harm_copies
    )
    feature_cards = []
    for f in catalog.features:
        feature_cards.extend(
            [("Feature", f.title, badge_list(f.counters),
              style.feature_copies_per_kind, False)]
            * style.feature_copies_per_kind
        )
    feature_cards.extend(
        [("Wild Feature", "Invent a feature and convince the table.", [],
          style.wild_feature_copies, True)] * style.wild_feature_copies
    )

    paths: dict[str, Path] = {}
    for name, family, cards in (
        ("businesses", "business", business_cards),
        ("harms", "harm", harm_cards),
        ("features", "feature", feature_cards),
    ):
        rendered = [
            _card(style, x, y, family, heading, title, badges, copies, wild)
            for (x, y), (heading, title, badges, copies, wild) in zip(
                _grid_positions(style, len(cards)), cards
            )
        ]
        rows = -(-len(cards) // style.columns)
        path = out / f"{name}.svg"
        path.write_text(_sheet(style, rendered, rows), encoding="utf-8")
        paths[name] = path

    rules_path = out / "rules.svg"
    rules_path.write_text(_rules_page(style), encoding="utf-8")
    paths["rules"] = rules_path

    index = ["<!DOCTYPE html><html><head><title>AI Audit print sheets</title>",
             "</head><body><h1>AI Audit print-and-play</h1><ul>"]
    for name in ("businesses", "harms", "features", "rules"):
        index.append(f'<li><a href="{name}.svg">{name}.svg</a></li>')
    index.append("</ul><p>Print at 100% scale and cut along card borders.</p>")
    index.append("</body></html>")
    index_path = out / "index.html"
    index_path.write_text("".join(index), encoding="utf-8")
    paths["index"] = index_path
    return paths
