import { describe, expect, it } from "vitest";

import { formatQ, mapSlider, sliderForQ } from "../src/slider.js";

describe("mapSlider fixed points", () => {
  it("maps the left end to q = -50", () => {
    expect(mapSlider(-1)).toBe(-50);
  });

  it("maps the center to q = 1", () => {
    expect(mapSlider(0)).toBe(1);
  });

  it("maps the right end to q = +50", () => {
    expect(mapSlider(1)).toBe(50);
  });
});

describe("mapSlider shape", () => {
  it("is strictly increasing across the whole travel", () => {
    let prev = mapSlider(-1);
    for (let i = 1; i <= 2000; i += 1) {
      const s = -1 + (2 * i) / 2000;
      const q = mapSlider(s);
      expect(q).toBeGreaterThan(prev);
      prev = q;
    }
  });

  it("is continuous where the two halves meet", () => {
    expect(mapSlider(-1e-9)).toBeCloseTo(1, 7);
    expect(mapSlider(1e-9)).toBeCloseTo(1, 7);
  });

  it("rejects values outside [-1, 1]", () => {
    expect(() => mapSlider(1.01)).toThrow(RangeError);
    expect(() => mapSlider(-1.01)).toThrow(RangeError);
    expect(() => mapSlider(Number.NaN)).toThrow(RangeError);
  });
});

describe("q values of interest are reachable", () => {
  it.each([5.0, 0.85, 1.0, -50, 50, 2, 0.5, -3])("round-trips q = %s", (q) => {
    const s = sliderForQ(q);
    expect(s).toBeGreaterThanOrEqual(-1);
    expect(s).toBeLessThanOrEqual(1);
    expect(mapSlider(s)).toBeCloseTo(q, 9);
  });

  it("puts q = 5.0 on the disjunctive half", () => {
    expect(sliderForQ(5.0)).toBeGreaterThan(0);
  });

  it("puts q = 0.85 just left of center", () => {
    const s = sliderForQ(0.85);
    expect(s).toBeLessThan(0);
    expect(s).toBeGreaterThan(-0.1);
  });
});

describe("numeric readout", () => {
  it("shows one decimal for |q| >= 1", () => {
    expect(formatQ(5.0)).toBe("5.0");
    expect(formatQ(-50)).toBe("-50.0");
    expect(formatQ(1)).toBe("1.0");
  });

  it("shows two decimals below 1", () => {
    expect(formatQ(0.85)).toBe("0.85");
    expect(formatQ(-0.5)).toBe("-0.50");
  });
});
