import { existsSync, readdirSync } from "node:fs";
import { basename, join } from "node:path";
import { Figure, FigureSpec, render } from "./figures.js";
import { esc } from "./svg.js";
import { loadVerdict, rawCheckValue, rawTopValue, Verdict } from "./verdict.js";

interface RunReport {
  name: string;
  verdict: Verdict;
  figures: Figure[];
}

/** Quote one check from the verdict, byte-for-byte from the file. */
function quoteCheck(v: Verdict, name: string): string | undefined {
  const measured = rawCheckValue(v, name, "measured");
  if (measured === undefined) return undefined;
  const tol = rawCheckValue(v, name, "tolerance");
  const expected = rawCheckValue(v, name, "expected");
  const passed = rawCheckValue(v, name, "passed");
  const parts = [`${name}: measured ${measured}`];
  if (expected !== undefined) parts.push(`expected ${expected}`);
  if (tol !== undefined) parts.push(`tolerance ${tol.replace(/\s+/g, " ")}`);
  parts.push(passed === "true" ? "passed" : "FAILED");
  return parts.join(", ");
}

function caption(v: Verdict, checkNames: string[]): string {
  const lines = checkNames
    .map((n) => quoteCheck(v, n))
    .filter((s): s is string => s !== undefined);
  return lines.join(" — ");
}

/** Build the figure specs for one run directory from the files it holds. */
export function figureSpecs(dir: string, verdict: Verdict): FigureSpec[] {
  const specs: FigureSpec[] = [];
  const has = (f: string) => existsSync(join(dir, f));
  const v = verdict;
  const scenario = v.data.scenario;

  if (has("trajectory.csv")) {
    const predicted = rawTopValue(v, "predicted_shift");
    specs.push({
      kind: "trajectory",
      title: `${scenario}: shock shift X(t) - st`,
      xLabel: "t",
      yLabel: "X - st",
      series: [
        { path: join(dir, "trajectory.csv"), x: "t", y: "X-st", label: "measured shift" },
      ],
      asymptote:
        typeof v.data.predicted_shift === "number"
          ? { value: v.data.predicted_shift, label: `predicted limit ${predicted}` }
          : undefined,
      caption: caption(v, ["final_shift", "shift_decay_slope"]),
    });
  }

  if (has("shift.csv")) {
    specs.push({
      kind: "trajectory",
      title: `${scenario}: phase shift X(t)`,
      xLabel: "t",
      yLabel: "X",
      series: [{ path: join(dir, "shift.csv"), x: "t", y: "X", label: "X(t)" }],
      caption: caption(v, ["shift_settled", "mass_defect", "superposition_gap_ratio"]),
    });
  }

  if (has("decay.csv")) {
    const slope = v.data.checks.find((c) => c.name === "decay_slope");
    const intercept = v.data.fit_intercept;
    specs.push({
      kind: "loglog-decay",
      title: `${scenario}: far-field decay of the boundary wave`,
      xLabel: "|x|",
      yLabel: "sup deviation",
      series: [
        { path: join(dir, "decay.csv"), x: "x", y: "sup_deviation", label: "measured" },
      ],
      fit:
        slope && typeof intercept === "number"
          ? {
              slope: slope.measured,
              intercept,
              label: `fitted slope ${rawCheckValue(v, "decay_slope", "measured")}`,
            }
          : undefined,
      caption: caption(v, [
        "decay_slope",
        "flux_average_x5",
        "flux_average_x20",
        "flux_average_x80",
        "cross_check_l1",
      ]),
    });
  }

  if (has("convergence.csv")) {
    const orderChecks = v.data.checks
      .filter((c) => c.name.startsWith("order_level_"))
      .map((c) => c.name);
    specs.push({
      kind: "loglog-decay",
      title: `${scenario}: grid refinement`,
      xLabel: "dx",
      yLabel: "error",
      series: [
        { path: join(dir, "convergence.csv"), x: "dx", y: "error", label: "error vs finer grid" },
      ],
      caption: caption(v, orderChecks),
    });
  }

  if (has("profile.csv")) {
    specs.push({
      kind: "profile-overlay",
      title: `${scenario}: traveling-wave profile`,
      xLabel: "xi",
      yLabel: "value",
      series: [
        { path: join(dir, "profile.csv"), x: "xi", y: "phi", label: "phi" },
        { path: join(dir, "profile.csv"), x: "xi", y: "sigma", label: "sigma" },
      ],
      caption: caption(v, [
        "profile_sup_error",
        "tail_rate_left",
        "tail_rate_right",
        "sigma_consistency",
      ]),
    });
  }

  if (has("wave.csv")) {
    specs.push({
      kind: "heatmap",
      title: `${scenario}: boundary wave u+(x, t)`,
      xLabel: "x",
      yLabel: "t",
      series: [{ path: join(dir, "wave.csv"), x: "x", y: "t", label: "u_plus" }],
      value: "u_plus",
      caption: caption(v, [
        "march_l2_difference",
        "mode1_decay_rate",
        "contraction_ratio",
        "farfield_quadratic_ratio",
        "conservation_per_unit_time",
      ]),
    });
  }

  if (has("snapshots.csv")) {
    specs.push({
      kind: "heatmap",
      title: `${scenario}: solution u(x, t)`,
      xLabel: "x",
      yLabel: "t",
      series: [{ path: join(dir, "snapshots.csv"), x: "x", y: "t", label: "u" }],
      value: "u",
      caption: caption(v, [
        "conservation_per_step",
        "sup_error",
      ]),
    });
    if (scenario === "viscous-coupled") {
      specs.push({
        kind: "profile-overlay",
        title: `${scenario}: final snapshot vs ansatz`,
        xLabel: "x",
        yLabel: "u",
        series: [
          {
            path: join(dir, "snapshots.csv"),
            x: "x",
            y: "u",
            label: "u (final snapshot)",
            lastGroupOf: "t",
          },
          {
            path: join(dir, "snapshots.csv"),
            x: "x",
            y: "u_sharp",
            label: "ansatz u#",
            lastGroupOf: "t",
          },
        ],
        caption: caption(v, ["superposition_gap_ratio", "two_ansatz_decay_r2"]),
      });
    }
  }

  return specs;
}

function runReport(dir: string, name: string): RunReport {
  const verdict = loadVerdict(join(dir, "verdict.json"));
  const figures = figureSpecs(dir, verdict).map(render);
  return { name, verdict, figures };
}

/** Discover run directories: either a single run, or one level of subdirs. */
export function discoverRuns(resultsDir: string): { name: string; dir: string }[] {
  if (existsSync(join(resultsDir, "verdict.json"))) {
    return [{ name: basename(resultsDir), dir: resultsDir }];
  }
  const subs = readdirSync(resultsDir, { withFileTypes: true })
    .filter((e) => e.isDirectory())
    .map((e) => e.name)
    .sort()
    .filter((n) => existsSync(join(resultsDir, n, "verdict.json")));
  if (subs.length === 0) {
    throw new Error(`no verdict.json found under ${resultsDir}`);
  }
  return subs.map((n) => ({ name: n, dir: join(resultsDir, n) }));
}

const STYLE = `
body { font-family: Helvetica, Arial, sans-serif; margin: 24px auto; max-width: 1220px; color: #222; }
h1 { font-size: 22px; } h2 { font-size: 17px; margin-top: 28px; border-bottom: 1px solid #ccc; padding-bottom: 4px; }
.run-meta { font-size: 12px; color: #555; }
.verdict-pass { color: #2c7a2c; font-weight: bold; }
.verdict-fail { color: #b02424; font-weight: bold; }
.figures { display: flex; flex-wrap: wrap; gap: 18px; }
figure { margin: 0; width: 560px; }
figcaption { font-size: 12px; color: #444; margin-top: 4px; line-height: 1.45; }
details { margin-top: 10px; } details pre { font-size: 11px; background: #f6f6f6; padding: 8px; overflow-x: auto; }
`;

export function buildReport(resultsDir: string): string {
  const runs = discoverRuns(resultsDir).map(({ name, dir }) => runReport(dir, name));
  const parts: string[] = [
    "<!DOCTYPE html>",
    '<html lang="en"><head><meta charset="utf-8">',
    `<title>pershock report</title><style>${STYLE}</style></head><body>`,
    "<h1>pershock results report</h1>",
  ];
  for (const run of runs) {
    const v = run.verdict;
    const cls = v.data.passed ? "verdict-pass" : "verdict-fail";
    const word = v.data.passed ? "PASS" : "FAIL";
    parts.push(`<h2>${esc(run.name)} — ${esc(v.data.scenario)} <span class="${cls}">[${word}]</span></h2>`);
    parts.push(
      `<p class="run-meta">config ${esc(v.data.config_hash)} · seed ${v.data.seed} · schema ${v.data.schema_version}</p>`,
    );
    parts.push('<div class="figures">');
    for (const fig of run.figures) {
      parts.push("<figure>");
      parts.push(fig.svg);
      parts.push(`<figcaption>${esc(fig.caption)}</figcaption>`);
      parts.push("</figure>");
    }
    parts.push("</div>");
    parts.push(
      `<details><summary>verdict.json (verbatim)</summary><pre>${esc(v.raw)}</pre></details>`,
    );
  }
  parts.push("</body></html>");
  return parts.join("\n");
}
