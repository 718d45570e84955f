// Card presentation: kind ids to titles, colors, shape glyphs and copy
// counts. Harm badges always pair the color with a shape so the table reads
// without color vision. Kind 0 is the wild card in both playable families.

import { CARDS_DATA } from "./cards_data.js";

export const WILD_KIND = 0;

export interface HarmPresentation {
  title: string;
  color: string;
  shape: string;
}

export function businessTitle(kind: number): string {
  const entry = CARDS_DATA.businesses[String(kind) as keyof typeof CARDS_DATA.businesses];
  return entry ? entry.title : `business ${kind}`;
}

export function businessHarms(kind: number): readonly number[] {
  const entry = CARDS_DATA.businesses[String(kind) as keyof typeof CARDS_DATA.businesses];
  return entry ? entry.harms : [];
}

export function harmPresentation(kind: number): HarmPresentation {
  if (kind === WILD_KIND) {
    return { title: "Wild harm", color: "#888", shape: "wild" };
  }
  const entry = CARDS_DATA.harms[String(kind) as keyof typeof CARDS_DATA.harms];
  return entry ?? { title: `harm ${kind}`, color: "#888", shape: "circle" };
}

export function featureTitle(kind: number): string {
  if (kind === WILD_KIND) {
    return "Wild feature";
  }
  const entry = CARDS_DATA.features[String(kind) as keyof typeof CARDS_DATA.features];
  return entry ? entry.title : `feature ${kind}`;
}

export function featureCounters(kind: number): readonly number[] {
  const entry = CARDS_DATA.features[String(kind) as keyof typeof CARDS_DATA.features];
  return entry ? entry.counters : [];
}

export function copyCount(family: "harm" | "feature", kind: number): number {
  if (family === "harm") {
    return kind === WILD_KIND ? CARDS_DATA.copies.wildHarm : CARDS_DATA.copies.harm;
  }
  return kind === WILD_KIND ? CARDS_DATA.copies.wildFeature : CARDS_DATA.copies.feature;
}

/** True iff the feature kind answers the harm kind per the catalog. */
export function featureCountersHarm(featureKind: number, harmKind: number): boolean {
  return featureCounters(featureKind).includes(harmKind);
}

const SHAPE_PATHS: Record<string, string> = {
  circle: '<circle cx="8" cy="8" r="6"/>',
  triangle: '<polygon points="8,2 14,13 2,13"/>',
  square: '<rect x="3" y="3" width="10" height="10"/>',
  diamond: '<polygon points="8,2 13,8 8,14 3,8"/>',
  star: '<polygon points="8,1 9.8,6 15,6 10.9,9.2 12.5,14.5 8,11.4 3.5,14.5 5.1,9.2 1,6 6.2,6"/>',
  pentagon: '<polygon points="8,2 14,6.5 11.7,13.5 4.3,13.5 2,6.5"/>',
  hexagon: '<polygon points="8,2 13,5 13,11 8,14 3,11 3,5"/>',
  cross: '<polygon points="6,2 10,2 10,6 14,6 14,10 10,10 10,14 6,14 6,10 2,10 2,6 6,6"/>',
  heart: '<path d="M8 14 C2 9 3 4 8 7 C13 4 14 9 8 14 Z"/>',
  crescent: '<path d="M11 2 A6.5 6.5 0 1 0 11 14 A5 5 0 1 1 11 2 Z"/>',
  ring: '<circle cx="8" cy="8" r="5" fill="none" stroke-width="3" stroke="currentColor"/>',
  teardrop: '<path d="M8 2 C11 6 12 9 10.5 12 C9 14.5 7 14.5 5.5 12 C4 9 5 6 8 2 Z"/>',
  arrow: '<polygon points="8,2 14,8 10,8 10,14 6,14 6,8 2,8"/>',
  wild: '<text x="8" y="12" text-anchor="middle" font-size="12">?</text>',
};

/** Inline SVG badge for a harm: its shape filled with its color, id below. */
export function harmBadge(kind: number): string {
  const harm = harmPresentation(kind);
  const glyph = SHAPE_PATHS[harm.shape] ?? SHAPE_PATHS.circle;
  const fill = harm.shape === "ring" ? "none" : harm.color;
  return (
    `<span class="badge" title="${escapeHtml(harm.title)}">` +
    `<svg viewBox="0 0 16 16" width="16" height="16" fill="${fill}" ` +
    `color="${harm.color}" aria-label="${escapeHtml(harm.title)}">${glyph}</svg>` +
    `<span class="badge-id">${kind === WILD_KIND ? "?" : kind}</span></span>`
  );
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}
