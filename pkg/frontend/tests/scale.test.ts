import { describe, expect, it } from "vitest";
import {
  extent,
  fmtTick,
  linearScale,
  linearTicks,
  logScale,
  logTicks,
} from "../src/scale.js";

describe("linear scale", () => {
  it("maps the domain endpoints onto the range", () => {
    const s = linearScale([0, 10], [100, 500]);
    expect(s(0)).toBe(100);
    expect(s(10)).toBe(500);
    expect(s(5)).toBe(300);
  });

  it("places round ticks inside the domain", () => {
    const ticks = linearTicks(-0.07, 1.13);
    expect(ticks[0]).toBeGreaterThanOrEqual(-0.07);
    expect(ticks[ticks.length - 1]).toBeLessThanOrEqual(1.13);
    expect(ticks).toContain(0);
    expect(ticks.length).toBeGreaterThanOrEqual(3);
  });
});

describe("log scale", () => {
  it("is linear in log10", () => {
    const s = logScale([1, 100], [0, 200]);
    expect(s(1)).toBeCloseTo(0);
    expect(s(10)).toBeCloseTo(100);
    expect(s(100)).toBeCloseTo(200);
  });

  it("rejects nonpositive domains", () => {
    expect(() => logScale([0, 1], [0, 1])).toThrow();
  });

  it("uses decade ticks", () => {
    expect(logTicks(3, 4000)).toEqual([10, 100, 1000]);
  });
});

describe("formatting and extents", () => {
  it("fmtTick is plain for moderate values, exponential otherwise", () => {
    expect(fmtTick(0)).toBe("0");
    expect(fmtTick(2.5)).toBe("2.5");
    expect(fmtTick(1e-6)).toBe("1.0e-6");
  });

  it("extent skips non-finite values and widens degenerate ranges", () => {
    expect(extent([3, NaN, -2, Infinity])).toEqual([-2, 3]);
    expect(extent([5, 5])).toEqual([4.5, 5.5]);
  });
});
