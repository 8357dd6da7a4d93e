import { col, readTable } from "./csv.js";
import {
  extent,
  linearScale,
  logScale,
  padded,
  Scale,
} from "./scale.js";
import {
  axes,
  closeSvg,
  dots,
  heatColor,
  hline,
  legend,
  MARGIN,
  openSvg,
  PALETTE,
  polyline,
  HEIGHT,
  WIDTH,
} from "./svg.js";

export type FigureKind =
  | "trajectory"
  | "loglog-decay"
  | "profile-overlay"
  | "heatmap";

export interface SeriesSpec {
  /** CSV path; the table's schema is validated against x/y columns. */
  path: string;
  x: string;
  y: string;
  label: string;
  /** Keep only rows whose value in this column equals the last row's value
   *  (e.g. the final snapshot of a long-format time series). */
  lastGroupOf?: string;
}

export interface FigureSpec {
  kind: FigureKind;
  title: string;
  xLabel: string;
  yLabel: string;
  series: SeriesSpec[];
  /** trajectory: horizontal reference line (e.g. a predicted limit). */
  asymptote?: { value: number; label: string };
  /** loglog-decay: fitted power law y = exp(intercept) * x^slope. */
  fit?: { slope: number; intercept: number; label: string };
  /** heatmap: the value column of the single long-format series. */
  value?: string;
  /** Caption shown under the figure; numbers quoted from the verdict. */
  caption: string;
}

export interface Figure {
  svg: string;
  caption: string;
}

interface Series {
  x: number[];
  y: number[];
  label: string;
}

function loadSeries(spec: SeriesSpec): Series {
  const need = [spec.x, spec.y];
  if (spec.lastGroupOf) need.push(spec.lastGroupOf);
  const table = readTable(spec.path, need);
  let xs = col(table, spec.x, spec.path);
  let ys = col(table, spec.y, spec.path);
  if (spec.lastGroupOf) {
    const g = col(table, spec.lastGroupOf, spec.path);
    const last = g[g.length - 1];
    const keep = g.map((v, i) => i).filter((i) => g[i] === last);
    xs = keep.map((i) => xs[i]);
    ys = keep.map((i) => ys[i]);
  }
  return { x: xs, y: ys, label: spec.label };
}

export function render(spec: FigureSpec): Figure {
  switch (spec.kind) {
    case "trajectory":
      return { svg: renderLines(spec, false), caption: spec.caption };
    case "profile-overlay":
      return { svg: renderLines(spec, false), caption: spec.caption };
    case "loglog-decay":
      return { svg: renderLines(spec, true), caption: spec.caption };
    case "heatmap":
      return { svg: renderHeatmap(spec), caption: spec.caption };
  }
}

function renderLines(spec: FigureSpec, loglog: boolean): string {
  const series = spec.series.map(loadSeries);
  if (loglog) {
    for (const s of series) {
      s.x = s.x.map(Math.abs);
      s.y = s.y.map(Math.abs);
    }
  }
  const allX = series.flatMap((s) => s.x);
  const allY = series.flatMap((s) => s.y);
  if (spec.asymptote) allY.push(spec.asymptote.value);
  const px: [number, number] = [MARGIN.left, WIDTH - MARGIN.right];
  const py: [number, number] = [HEIGHT - MARGIN.bottom, MARGIN.top];
  let xs: Scale;
  let ys: Scale;
  if (loglog) {
    xs = logScale(extent(allX.filter((v) => v > 0)), px);
    ys = logScale(extent(allY.filter((v) => v > 0)), py);
  } else {
    xs = linearScale(padded(extent(allX)), px);
    ys = linearScale(padded(extent(allY)), py);
  }
  const out = openSvg(spec.title);
  axes(out, xs, ys, spec.xLabel, spec.yLabel);
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    if (loglog && s.x.length <= 40) {
      dots(out, xs, ys, s.x, s.y, color);
      polyline(out, xs, ys, s.x, s.y, color);
    } else {
      polyline(out, xs, ys, s.x, s.y, color);
    }
  });
  if (spec.fit && loglog) {
    const [d0, d1] = xs.domain;
    const line = (v: number) => Math.exp(spec.fit!.intercept) * Math.pow(v, spec.fit!.slope);
    polyline(out, xs, ys, [d0, d1], [line(d0), line(d1)], "#666666", "5 4");
  }
  if (spec.asymptote) {
    hline(out, ys, spec.asymptote.value, "#b36b00", spec.asymptote.label);
  }
  const entries: [string, string][] = series.map(
    (s, i) => [s.label, PALETTE[i % PALETTE.length]] as [string, string],
  );
  if (spec.fit) entries.push([spec.fit.label, "#666666"]);
  if (entries.length > 1 || spec.fit) legend(out, entries);
  return closeSvg(out);
}

const HEAT_NX = 140;
const HEAT_NY = 100;

function renderHeatmap(spec: FigureSpec): string {
  const s = spec.series[0];
  const valueCol = spec.value ?? "u";
  const table = readTable(s.path, [s.x, s.y, valueCol]);
  const xv = col(table, s.x, s.path);
  const yv = col(table, s.y, s.path);
  const vv = col(table, valueCol, s.path);

  const [x0, x1] = extent(xv);
  const [y0, y1] = extent(yv);
  const [v0, v1] = extent(vv);
  const nx = Math.min(HEAT_NX, new Set(xv).size);
  const ny = Math.min(HEAT_NY, new Set(yv).size);
  const sums = new Float64Array(nx * ny);
  const counts = new Float64Array(nx * ny);
  const xBin = (v: number) =>
    Math.min(nx - 1, Math.floor(((v - x0) / (x1 - x0 || 1)) * nx));
  const yBin = (v: number) =>
    Math.min(ny - 1, Math.floor(((v - y0) / (y1 - y0 || 1)) * ny));
  for (let i = 0; i < vv.length; i += 1) {
    const k = yBin(yv[i]) * nx + xBin(xv[i]);
    sums[k] += vv[i];
    counts[k] += 1;
  }

  const px: [number, number] = [MARGIN.left, WIDTH - MARGIN.right];
  const py: [number, number] = [HEIGHT - MARGIN.bottom, MARGIN.top];
  const xs = linearScale([x0, x1], px);
  const ys = linearScale([y0, y1], py);
  const out = openSvg(spec.title);
  const cw = (px[1] - px[0]) / nx;
  const ch = (py[0] - py[1]) / ny;
  for (let j = 0; j < ny; j += 1) {
    for (let i = 0; i < nx; i += 1) {
      const k = j * nx + i;
      if (counts[k] === 0) continue;
      const t = (sums[k] / counts[k] - v0) / (v1 - v0 || 1);
      const cx = (px[0] + i * cw).toFixed(2);
      const cy = (py[0] - (j + 1) * ch).toFixed(2);
      out.push(
        `<rect x="${cx}" y="${cy}" width="${(cw + 0.5).toFixed(2)}" height="${(ch + 0.5).toFixed(2)}" fill="${heatColor(t)}"/>`,
      );
    }
  }
  axes(out, xs, ys, spec.xLabel, spec.yLabel);
  // color bar reference: min/max of the value column
  out.push(
    `<text x="${WIDTH - MARGIN.right}" y="${MARGIN.top - 6}" text-anchor="end">${valueCol}: ${v0.toPrecision(4)} … ${v1.toPrecision(4)}</text>`,
  );
  return closeSvg(out);
}
