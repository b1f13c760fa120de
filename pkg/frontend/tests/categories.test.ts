import { describe, expect, it } from "vitest";

import { CATEGORIES, CATEGORY_COUNT, categoryAt } from "../src/categories.js";

describe("sound categories", () => {
  it("lists the nine wire identifiers in collection order", () => {
    expect(CATEGORIES.map((c) => c.id)).toEqual([
      "breathing-deep",
      "breathing-shallow",
      "cough-heavy",
      "cough-shallow",
      "counting-fast",
      "counting-normal",
      "vowel-a",
      "vowel-e",
      "vowel-o",
    ]);
    expect(CATEGORY_COUNT).toBe(9);
  });

  it("shares instruction text within each pair and across the vowels", () => {
    const byId = new Map(CATEGORIES.map((c) => [c.id, c.instruction]));
    expect(byId.get("breathing-deep")).toBe(byId.get("breathing-shallow"));
    expect(byId.get("cough-heavy")).toBe(byId.get("cough-shallow"));
    expect(byId.get("counting-fast")).toBe(byId.get("counting-normal"));
    expect(byId.get("vowel-a")).toBe(byId.get("vowel-e"));
    expect(byId.get("vowel-e")).toBe(byId.get("vowel-o"));
  });

  it("carries the agreed instruction wording verbatim", () => {
    const byId = new Map(CATEGORIES.map((c) => [c.id, c.instruction]));
    expect(byId.get("breathing-deep")).toBe(
      "Few respiration cycles in deep and shallow manner",
    );
    expect(byId.get("cough-heavy")).toBe(
      "Few cycles of coughing in heavy and shallow manner",
    );
    expect(byId.get("counting-fast")).toBe(
      "speech sound of counting 1 to 20 in fast and normal pace",
    );
    expect(byId.get("vowel-a")).toBe(
      "sustained phonation of vowels: [u] in boot, [i] in beet, [æ] in bat",
    );
  });

  it("gives every category a distinct human label", () => {
    const labels = CATEGORIES.map((c) => c.label);
    expect(new Set(labels).size).toBe(CATEGORIES.length);
    for (const label of labels) {
      expect(label.length).toBeGreaterThan(0);
    }
  });

  it("bounds-checks positional lookup", () => {
    expect(categoryAt(0).id).toBe("breathing-deep");
    expect(categoryAt(8).id).toBe("vowel-o");
    expect(() => categoryAt(9)).toThrow(RangeError);
    expect(() => categoryAt(-1)).toThrow(RangeError);
  });
});
