import { fmtTick, Scale } from "./scale.js";

/** Fixed figure geometry: every figure is the same size and style. */
export const WIDTH = 560;
export const HEIGHT = 360;
export const MARGIN = { left: 62, right: 16, top: 28, bottom: 44 };

export const PALETTE = ["#1f6fb2", "#d1495b", "#3a7d44", "#8a5a9e"];

const n = (v: number) => Number(v.toFixed(2));

export function openSvg(title: string): string[] {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif" font-size="11">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`,
    `<text x="${WIDTH / 2}" y="17" text-anchor="middle" font-size="13">${esc(title)}</text>`,
  ];
}

export function axes(
  out: string[],
  xs: Scale,
  ys: Scale,
  xLabel: string,
  yLabel: string,
): void {
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  out.push(
    `<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="#444444"/>`,
  );
  for (const t of xs.ticks()) {
    const px = n(xs(t));
    if (px < x0 - 0.5 || px > x1 + 0.5) continue;
    out.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 4}" stroke="#444444"/>`);
    out.push(
      `<text x="${px}" y="${y0 + 16}" text-anchor="middle">${esc(fmtTick(t))}</text>`,
    );
  }
  for (const t of ys.ticks()) {
    const py = n(ys(t));
    if (py < y1 - 0.5 || py > y0 + 0.5) continue;
    out.push(`<line x1="${x0 - 4}" y1="${py}" x2="${x0}" y2="${py}" stroke="#444444"/>`);
    out.push(
      `<text x="${x0 - 7}" y="${py + 3}" text-anchor="end">${esc(fmtTick(t))}</text>`,
    );
  }
  out.push(
    `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 10}" text-anchor="middle">${esc(xLabel)}</text>`,
  );
  out.push(
    `<text transform="translate(14,${(y0 + y1) / 2}) rotate(-90)" text-anchor="middle">${esc(yLabel)}</text>`,
  );
}

export function polyline(
  out: string[],
  xs: Scale,
  ys: Scale,
  x: number[],
  y: number[],
  color: string,
  dash = "",
): void {
  const pts: string[] = [];
  for (let i = 0; i < x.length; i += 1) {
    if (!Number.isFinite(x[i]) || !Number.isFinite(y[i])) continue;
    pts.push(`${n(xs(x[i]))},${n(ys(y[i]))}`);
  }
  const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
  out.push(
    `<polyline points="${pts.join(" ")}" fill="none" stroke="${color}" stroke-width="1.5"${dashAttr}/>`,
  );
}

export function dots(
  out: string[],
  xs: Scale,
  ys: Scale,
  x: number[],
  y: number[],
  color: string,
): void {
  for (let i = 0; i < x.length; i += 1) {
    out.push(`<circle cx="${n(xs(x[i]))}" cy="${n(ys(y[i]))}" r="2.5" fill="${color}"/>`);
  }
}

export function hline(
  out: string[],
  ys: Scale,
  y: number,
  color: string,
  label: string,
): void {
  const py = n(ys(y));
  out.push(
    `<line x1="${MARGIN.left}" y1="${py}" x2="${WIDTH - MARGIN.right}" y2="${py}" stroke="${color}" stroke-width="1" stroke-dasharray="6 3"/>`,
  );
  out.push(
    `<text x="${WIDTH - MARGIN.right - 4}" y="${py - 5}" text-anchor="end" fill="${color}">${esc(label)}</text>`,
  );
}

export function legend(out: string[], entries: [string, string][]): void {
  let y = MARGIN.top + 14;
  for (const [label, color] of entries) {
    out.push(
      `<line x1="${MARGIN.left + 10}" y1="${y - 4}" x2="${MARGIN.left + 34}" y2="${y - 4}" stroke="${color}" stroke-width="2"/>`,
    );
    out.push(`<text x="${MARGIN.left + 40}" y="${y}">${esc(label)}</text>`);
    y += 15;
  }
}

export function closeSvg(out: string[]): string {
  out.push("</svg>");
  return out.join("\n");
}

export function esc(s: string): string {
  return s
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

/** Fixed blue-to-red diverging-free sequential colormap for heatmaps. */
export function heatColor(t: number): string {
  const c = Math.max(0, Math.min(1, t));
  // piecewise-linear approximation of viridis
  const stops: [number, number, number][] = [
    [68, 1, 84],
    [59, 82, 139],
    [33, 145, 140],
    [94, 201, 98],
    [253, 231, 37],
  ];
  const pos = c * (stops.length - 1);
  const i = Math.min(stops.length - 2, Math.floor(pos));
  const f = pos - i;
  const mix = (a: number, b: number) => Math.round(a + (b - a) * f);
  const [r, g, b] = [0, 1, 2].map((k) => mix(stops[i][k], stops[i + 1][k]));
  return `rgb(${r},${g},${b})`;
}
