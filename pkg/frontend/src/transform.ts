/**
 * Affine screen transforms. The server owns all glyph layout; the only
 * thing the client may do with member geometry is one affine transform
 * per glyph (uniform scale + translation), which keeps rendered marks
 * verifiable against the served values.
 */

import type { Glyph } from "./types.js";

export interface Affine {
  tx: number;
  ty: number;
  s: number;
}

export function applyAffine(t: Affine, x: number, y: number): [number, number] {
  return [t.tx + t.s * x, t.ty + t.s * y];
}

/**
 * Transform placing a glyph at (cx, cy), shrunk only if its enclosing
 * circle exceeds maxR (never magnified, so relative sizes stay honest
 * across glyphs at scale 1).
 */
export function glyphTransform(glyph: Glyph, cx: number, cy: number, maxR: number): Affine {
  const r = glyph.enclosing.r;
  const s = r > maxR && r > 0 ? maxR / r : 1;
  return { tx: cx, ty: cy, s };
}

/** Linear y-scale mapping metres to pixels (top-down SVG axis). */
export function elevationScale(
  maxMetres: number,
  top: number,
  bottom: number,
): (m: number) => number {
  const span = Math.max(maxMetres, 1);
  return (m: number) => bottom - (m / span) * (bottom - top);
}

export function invertElevation(
  maxMetres: number,
  top: number,
  bottom: number,
): (y: number) => number {
  const span = Math.max(maxMetres, 1);
  return (y: number) => ((bottom - y) / (bottom - top)) * span;
}

/** Compass point: angle 0 = north (up), degrees clockwise. */
export function polarPoint(
  cx: number,
  cy: number,
  radius: number,
  deg: number,
): [number, number] {
  const rad = (deg * Math.PI) / 180;
  return [cx + radius * Math.sin(rad), cy - radius * Math.cos(rad)];
}

/** Inverse of polarPoint's angle: screen position to compass degrees. */
export function screenToCompass(cx: number, cy: number, x: number, y: number): number {
  const deg = (Math.atan2(x - cx, cy - y) * 180) / Math.PI;
  return (deg + 360) % 360;
}

/** Fit lon/lat bounds into a pixel box, preserving aspect ratio. */
export function lonLatProjection(
  points: [number, number][],
  width: number,
  height: number,
  margin: number,
): (p: [number, number]) => [number, number] {
  if (points.length === 0) {
    return (p) => p;
  }
  const lons = points.map((p) => p[0]);
  const lats = points.map((p) => p[1]);
  const lon0 = Math.min(...lons);
  const lat0 = Math.min(...lats);
  const spanX = Math.max(Math.max(...lons) - lon0, 1e-9);
  const spanY = Math.max(Math.max(...lats) - lat0, 1e-9);
  const k = Math.min((width - 2 * margin) / spanX, (height - 2 * margin) / spanY);
  return ([lon, lat]) => [margin + (lon - lon0) * k, height - margin - (lat - lat0) * k];
}
