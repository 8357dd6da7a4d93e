/** Linear and logarithmic axis scales with deterministic tick placement. */

export interface Scale {
  (v: number): number;
  ticks(): number[];
  domain: [number, number];
  range: [number, number];
  log: boolean;
}

export function linearScale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const [d0, d1] = domain;
  const span = d1 - d0 || 1;
  const f = ((v: number) =>
    range[0] + ((v - d0) / span) * (range[1] - range[0])) as Scale;
  f.ticks = () => linearTicks(d0, d1);
  f.domain = domain;
  f.range = range;
  f.log = false;
  return f;
}

export function logScale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) throw new Error("log scale needs positive domain");
  const l0 = Math.log10(d0);
  const span = Math.log10(d1) - l0 || 1;
  const f = ((v: number) =>
    range[0] + ((Math.log10(v) - l0) / span) * (range[1] - range[0])) as Scale;
  f.ticks = () => logTicks(d0, d1);
  f.domain = domain;
  f.range = range;
  f.log = true;
  return f;
}

export function linearTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) return [lo];
  const step = niceStep((hi - lo) / count);
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

function niceStep(rough: number): number {
  const pow = Math.pow(10, Math.floor(Math.log10(rough)));
  const frac = rough / pow;
  const nice = frac <= 1 ? 1 : frac <= 2 ? 2 : frac <= 5 ? 5 : 10;
  return nice * pow;
}

export function logTicks(lo: number, hi: number): number[] {
  const out: number[] = [];
  for (
    let e = Math.ceil(Math.log10(lo) - 1e-9);
    e <= Math.floor(Math.log10(hi) + 1e-9);
    e += 1
  ) {
    out.push(Math.pow(10, e));
  }
  return out.length >= 2 ? out : [lo, hi];
}

/** Fixed-precision label used everywhere so output is deterministic. */
export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1);
  return parseFloat(v.toPrecision(6)).toString();
}

export function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo > hi) return [0, 1];
  if (lo === hi) return [lo - 0.5, hi + 0.5];
  return [lo, hi];
}

export function padded(e: [number, number], frac = 0.05): [number, number] {
  const pad = (e[1] - e[0]) * frac;
  return [e[0] - pad, e[1] + pad];
}
