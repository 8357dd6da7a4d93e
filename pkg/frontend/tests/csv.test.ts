import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { readTable } from "../src/csv.js";
import { SchemaMismatch } from "../src/errors.js";

const FIXTURES = join(__dirname, "fixtures");

describe("readTable", () => {
  it("parses a harness trajectory table", () => {
    const t = readTable(join(FIXTURES, "suite/ishift/trajectory.csv"), [
      "t",
      "X",
      "X-st",
    ]);
    expect(t.columns).toEqual(["t", "X", "X-st"]);
    expect(t.nRows).toBeGreaterThan(10);
    const ts = t.data.get("t")!;
    expect(ts.every((v) => Number.isFinite(v))).toBe(true);
    // rows keep file order
    expect(ts[0]).toBeLessThan(ts[ts.length - 1]);
  });

  it("round-trips full float precision", () => {
    const dir = mkdtempSync(join(tmpdir(), "csv-"));
    const p = join(dir, "t.csv");
    writeFileSync(p, "a,b\n0.1234567890123456,-1.5149257407543117\n");
    const t = readTable(p, ["a", "b"]);
    expect(t.data.get("a")![0]).toBe(0.1234567890123456);
    expect(t.data.get("b")![0]).toBe(-1.5149257407543117);
  });

  it("raises SchemaMismatch naming the missing column", () => {
    const dir = mkdtempSync(join(tmpdir(), "csv-"));
    const p = join(dir, "bad.csv");
    writeFileSync(p, "t,position\n1.0,2.0\n");
    let err: unknown;
    try {
      readTable(p, ["t", "X"]);
    } catch (e) {
      err = e;
    }
    expect(err).toBeInstanceOf(SchemaMismatch);
    expect((err as SchemaMismatch).column).toBe("X");
    expect((err as SchemaMismatch).message).toContain('"X"');
    expect((err as SchemaMismatch).message).toContain(p);
  });
});
