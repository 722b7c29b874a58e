/** Pure coordinate math shared by the send path and the overlays.
 *
 * The canvas y axis grows downward while the recognizer expects the
 * mathematical convention, so points are flipped exactly once on the way
 * out; everything drawn back onto the canvas uses the captured canvas
 * points directly (indices returned by the service refer to the
 * submitted point order).
 */

import type { Point } from "./types.js";

/** Canvas -> math coordinates (y up). Applied once, when sending. */
export function toMathPoints(points: Point[], height: number): Point[] {
  return points.map(([x, y]) => [x, height - y]);
}

/** Canvas positions for the returned critical point indices. */
export function overlayPositions(captured: Point[], indices: number[]): Point[] {
  return indices
    .filter((i) => i >= 0 && i < captured.length)
    .map((i) => captured[i]);
}

export function distance(a: Point, b: Point): number {
  return Math.hypot(a[0] - b[0], a[1] - b[1]);
}

export interface RoseBar {
  direction: number;
  value: number;
  x: number;
  y: number;
  width: number;
  height: number;
}

/**
 * Layout for the 8-bin direction histogram: one vertical bar per
 * direction (1..8 left to right), scaled into a box of the given size.
 */
export function roseBars(
  fdf: number[],
  boxWidth: number,
  boxHeight: number,
): RoseBar[] {
  const slot = boxWidth / 8;
  const barWidth = slot * 0.7;
  return fdf.slice(0, 8).map((value, i) => {
    const clamped = Math.max(0, Math.min(1, value));
    const height = clamped * (boxHeight - 14);
    return {
      direction: i + 1,
      value: clamped,
      x: i * slot + (slot - barWidth) / 2,
      y: boxHeight - 14 - height,
      width: barWidth,
      height,
    };
  });
}

/** Index (0-based) of the strongest direction bar, -1 for empty input. */
export function dominantBar(fdf: number[]): number {
  let best = -1;
  let bestValue = -Infinity;
  fdf.forEach((value, i) => {
    if (value > bestValue) {
      best = i;
      bestValue = value;
    }
  });
  return best;
}
