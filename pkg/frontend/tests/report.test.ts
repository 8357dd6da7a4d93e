import { existsSync, mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { main } from "../src/cli.js";
import { buildReport, discoverRuns, figureSpecs } from "../src/report.js";
import { esc } from "../src/svg.js";
import { loadVerdict } from "../src/verdict.js";

const FIXTURES = join(__dirname, "fixtures");
const SUITE = join(FIXTURES, "suite");

describe("discoverRuns", () => {
  it("finds every run subdirectory of a suite output", () => {
    const runs = discoverRuns(SUITE);
    expect(runs.map((r) => r.name)).toEqual([
      "converge",
      "coupled",
      "heat",
      "ishift",
      "profile",
    ]);
  });

  it("treats a directory with verdict.json as a single run", () => {
    const runs = discoverRuns(join(SUITE, "ishift"));
    expect(runs).toHaveLength(1);
    expect(runs[0].name).toBe("ishift");
  });

  it("rejects a directory with no verdicts", () => {
    expect(() => discoverRuns(tmpdir())).toThrow(/no verdict.json/);
  });
});

describe("figureSpecs", () => {
  it("covers every figure kind across the fixture suite", () => {
    const kinds = new Set(
      discoverRuns(SUITE).flatMap(({ dir }) =>
        figureSpecs(dir, loadVerdict(join(dir, "verdict.json"))).map(
          (s) => s.kind,
        ),
      ),
    );
    expect(kinds).toEqual(
      new Set(["trajectory", "loglog-decay", "profile-overlay", "heatmap"]),
    );
  });

  it("annotates the trajectory with the predicted limit", () => {
    const dir = join(SUITE, "ishift");
    const specs = figureSpecs(dir, loadVerdict(join(dir, "verdict.json")));
    const traj = specs.find((s) => s.kind === "trajectory")!;
    expect(traj.asymptote).toBeDefined();
    expect(traj.asymptote!.label).toContain("0.19");
  });
});

describe("buildReport", () => {
  const html = buildReport(SUITE);

  it("renders one section per run with figures", () => {
    for (const name of ["converge", "coupled", "heat", "ishift", "profile"]) {
      expect(html).toContain(`<h2>${name}`);
    }
    expect(html.match(/<svg/g)!.length).toBeGreaterThanOrEqual(6);
    expect(html).toContain("figcaption");
  });

  it("quotes every verdict byte-for-byte", () => {
    for (const { dir } of discoverRuns(SUITE)) {
      const raw = readFileSync(join(dir, "verdict.json"), "utf8");
      expect(html).toContain(esc(raw));
    }
  });

  it("puts verdict numbers in the captions exactly as written", () => {
    const v = loadVerdict(join(SUITE, "ishift", "verdict.json"));
    const check = v.data.checks.find((c) => c.name === "final_shift")!;
    const literal = v.raw.match(/"measured": ([^,\n]+),/)![1];
    expect(html).toContain(`final_shift: measured ${literal}`);
    expect(Number(literal)).toBe(check.measured);
  });

  it("is deterministic", () => {
    expect(buildReport(SUITE)).toBe(html);
  });
});

describe("cli", () => {
  it("plot writes the report and exits 0", () => {
    const out = join(mkdtempSync(join(tmpdir(), "rep-")), "report.html");
    expect(main(["plot", SUITE, "--out", out])).toBe(0);
    expect(existsSync(out)).toBe(true);
    expect(readFileSync(out, "utf8")).toContain("pershock results report");
  });

  it("exits 2 on usage errors and bad inputs", () => {
    expect(main([])).toBe(2);
    expect(main(["plot"])).toBe(2);
    const out = join(mkdtempSync(join(tmpdir(), "rep-")), "report.html");
    expect(main(["plot", "/no/such/dir", "--out", out])).toBe(2);
  });
});
