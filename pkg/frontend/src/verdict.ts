import { readFileSync } from "node:fs";

export interface Check {
  name: string;
  measured: number;
  expected?: number;
  tolerance: number | [number, number];
  passed: boolean;
}

export interface VerdictData {
  schema_version: number;
  scenario: string;
  config_hash: string;
  seed: number;
  checks: Check[];
  passed: boolean;
  runtime_seconds: number;
  [extra: string]: unknown;
}

/** A verdict file, kept both parsed and as the raw bytes on disk. */
export interface Verdict {
  path: string;
  raw: string;
  data: VerdictData;
}

export function loadVerdict(path: string): Verdict {
  const raw = readFileSync(path, "utf8");
  return { path, raw, data: JSON.parse(raw) as VerdictData };
}

/**
 * The raw JSON literal for one field of a named check, exactly as it
 * appears in the file. Captions use this so that quoted numbers are
 * byte-for-byte identical to the verdict.
 */
export function rawCheckValue(
  verdict: Verdict,
  checkName: string,
  field: string,
): string | undefined {
  const block = checkBlock(verdict.raw, checkName);
  if (block === undefined) return undefined;
  return rawField(block, field);
}

/** The raw JSON literal for a top-level scalar field of the verdict. */
export function rawTopValue(verdict: Verdict, field: string): string | undefined {
  // top-level fields are at one level of indentation in the harness output
  const m = verdict.raw.match(
    new RegExp(`^  "${escapeRe(field)}": (.+?),?$`, "m"),
  );
  return m?.[1];
}

function checkBlock(raw: string, name: string): string | undefined {
  const tag = `"name": ${JSON.stringify(name)}`;
  const at = raw.indexOf(tag);
  if (at < 0) return undefined;
  const open = raw.lastIndexOf("{", at);
  const close = raw.indexOf("}", at);
  if (open < 0 || close < 0) return undefined;
  return raw.slice(open, close + 1);
}

function rawField(block: string, field: string): string | undefined {
  const m = block.match(
    new RegExp(`"${escapeRe(field)}": (\\[[^\\]]*\\]|[^,\\n}]+)`),
  );
  return m?.[1]?.trim();
}

function escapeRe(s: string): string {
  return s.replace(/[.*+?^${}()|[\]\\]/g, "\\$&");
}
