/** Payload shapes of the compute API. Field names are part of the contract. */

export interface BetaShapes {
  a: number;
  b: number;
}

export interface Type2Point {
  point: number;
}

export type Type2 = Type2Point | BetaShapes;

export function isPointType2(t2: Type2): t2 is Type2Point {
  return "point" in t2;
}

export interface SummaryPayload {
  mean: number;
  ci: [number, number];
  ci_level: number;
  n: number;
  histogram: { bins: number; counts: number[] };
  seed: number | null;
}

export interface PosteriorRequestBody {
  prior: BetaShapes;
  alpha: number;
  type2: Type2;
  n: number;
  seed?: number;
  ci_level?: number;
}

export interface ResolvedRequest {
  prior: BetaShapes;
  alpha: number;
  type2: Type2;
  n: number;
  seed: number;
  ci_level: number;
}

export interface PosteriorResponse {
  request: ResolvedRequest;
  summary: SummaryPayload;
}

export interface PriorPreview {
  a: number;
  b: number;
  mean: number;
  ci: [number, number];
  ci_level: number;
  grid: number[];
  density: number[];
}

export interface ScenarioSummary {
  id: string;
  label: string;
  prior: BetaShapes;
  alpha: number;
  type2: Type2;
  n: number;
  seed: number;
}
