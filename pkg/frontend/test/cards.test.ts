import { describe, expect, it } from "vitest";

import {
  businessHarms,
  businessTitle,
  copyCount,
  featureCounters,
  featureCountersHarm,
  featureTitle,
  harmBadge,
  harmPresentation,
  WILD_KIND,
} from "../src/cards.js";
import { CARDS_DATA } from "../src/cards_data.js";

describe("card presentation data", () => {
  it("carries the full deck", () => {
    expect(Object.keys(CARDS_DATA.businesses)).toHaveLength(14);
    expect(Object.keys(CARDS_DATA.harms)).toHaveLength(13);
    expect(Object.keys(CARDS_DATA.features)).toHaveLength(7);
  });

  it("pairs a unique color with a unique shape per harm", () => {
    const colors = new Set<string>();
    const shapes = new Set<string>();
    for (let kind = 1; kind <= 13; kind += 1) {
      const harm = harmPresentation(kind);
      colors.add(harm.color);
      shapes.add(harm.shape);
    }
    expect(colors.size).toBe(13);
    expect(shapes.size).toBe(13);
  });

  it("matches the printed legality relations", () => {
    expect([...businessHarms(4)]).toEqual([3, 7, 8, 12]);
    expect([...businessHarms(3)]).toEqual([5, 6]);
    expect([...featureCounters(2)]).toEqual([5]);
    expect(featureCountersHarm(2, 5)).toBe(true);
    expect(featureCountersHarm(2, 1)).toBe(false);
    expect(featureCountersHarm(7, 8)).toBe(true);
  });

  it("knows titles and copy counts", () => {
    expect(businessTitle(12)).toContain("Face filters");
    expect(featureTitle(2)).toContain("End to end encryption");
    expect(harmPresentation(6).title).toContain("buying behaviors");
    expect(copyCount("harm", 3)).toBe(3);
    expect(copyCount("harm", WILD_KIND)).toBe(1);
    expect(copyCount("feature", 5)).toBe(2);
    expect(copyCount("feature", WILD_KIND)).toBe(2);
  });

  it("renders badges with shape, color and id together", () => {
    const badge = harmBadge(8);
    expect(badge).toContain("<svg");
    expect(badge).toContain(harmPresentation(8).color);
    expect(badge).toContain('class="badge-id"');
    expect(badge).toContain(">8<");
  });
});
