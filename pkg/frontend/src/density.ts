/** Curve extraction: analytic prior grid and normalized posterior histogram. */
import type { PriorPreview, SummaryPayload } from "./types";

export interface Curve {
  xs: number[];
  ys: number[];
}

/** Histogram counts over [0,1] -> density values at bin midpoints. */
export function histogramToDensity(summary: SummaryPayload): Curve {
  const { bins, counts } = summary.histogram;
  const width = 1 / bins;
  const xs = new Array<number>(bins);
  const ys = new Array<number>(bins);
  for (let i = 0; i < bins; i++) {
    xs[i] = (i + 0.5) * width;
    ys[i] = counts[i] / (summary.n * width);
  }
  return { xs, ys };
}

export function previewCurve(preview: PriorPreview): Curve {
  return { xs: preview.grid, ys: preview.density };
}

export function curveMax(curve: Curve): number {
  let m = 0;
  for (const y of curve.ys) {
    if (Number.isFinite(y) && y > m) m = y;
  }
  return m;
}
