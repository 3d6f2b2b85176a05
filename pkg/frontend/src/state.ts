/** Control state, validation mirroring the server, and the view model.
 *
 * Displayed numbers are always the raw API response values converted with
 * String(); the UI never does statistics of its own.
 */
import type {
  BetaShapes,
  PosteriorRequestBody,
  PosteriorResponse,
  ResolvedRequest,
  ScenarioSummary,
} from "./types";
import { isPointType2 } from "./types";

export type PriorMode = "shapes" | "mean";
export type Type2Mode = "point" | "beta";
export type AlphaChoice = "0.05" | "0.01" | "0.005" | "custom";
export type SeedMode = "auto" | "fixed";

export const SERVER_MAX_N = 10_000_000;
export const MAX_SAFE_SEED = 2 ** 53 - 1;
/** Smaller draw count used while a slider is being dragged. */
export const DRAG_N = 10_000;

export interface ControlState {
  priorMode: PriorMode;
  priorA: number;
  priorB: number;
  priorMean: number;
  priorKappa: number;
  alphaChoice: AlphaChoice;
  alphaCustom: number;
  type2Mode: Type2Mode;
  type2Point: number;
  type2A: number;
  type2B: number;
  n: number;
  seedMode: SeedMode;
  seedValue: number;
}

export const DEFAULT_STATE: ControlState = {
  priorMode: "shapes",
  priorA: 60,
  priorB: 6,
  priorMean: 0.9,
  priorKappa: 66,
  alphaChoice: "0.05",
  alphaCustom: 0.05,
  type2Mode: "point",
  type2Point: 0.9,
  type2A: 10,
  type2B: 4,
  n: 100_000,
  seedMode: "auto",
  seedValue: 1,
};

/** (mean, concentration) -> Beta shapes: a = mean*k, b = (1-mean)*k. */
export function shapesFromMeanKappa(mean: number, kappa: number): BetaShapes {
  return { a: mean * kappa, b: (1 - mean) * kappa };
}

export function meanKappaFromShapes(shapes: BetaShapes): { mean: number; kappa: number } {
  return { mean: shapes.a / (shapes.a + shapes.b), kappa: shapes.a + shapes.b };
}

export function priorShapes(state: ControlState): BetaShapes {
  if (state.priorMode === "mean") {
    return shapesFromMeanKappa(state.priorMean, state.priorKappa);
  }
  return { a: state.priorA, b: state.priorB };
}

export function alphaValue(state: ControlState): number {
  return state.alphaChoice === "custom" ? state.alphaCustom : Number(state.alphaChoice);
}

export function type2Value(state: ControlState): PosteriorRequestBody["type2"] {
  if (state.type2Mode === "point") {
    return { point: state.type2Point };
  }
  return { a: state.type2A, b: state.type2B };
}

/** Same validity ranges the server enforces; empty list means submittable. */
export function validate(state: ControlState): string[] {
  const errors: string[] = [];
  const shapes = priorShapes(state);
  if (!(shapes.a > 0) || !Number.isFinite(shapes.a)) errors.push("prior shape a must be > 0");
  if (!(shapes.b > 0) || !Number.isFinite(shapes.b)) errors.push("prior shape b must be > 0");
  if (state.priorMode === "mean") {
    if (!(state.priorMean > 0 && state.priorMean < 1)) {
      errors.push("prior mean must lie strictly between 0 and 1");
    }
    if (!(state.priorKappa > 0)) errors.push("prior concentration must be > 0");
  }
  const alpha = alphaValue(state);
  if (!(alpha > 0 && alpha <= 1)) errors.push("alpha must lie in (0, 1]");
  if (state.type2Mode === "point") {
    if (!(state.type2Point >= 0 && state.type2Point < 1)) {
      errors.push("point Type II error must lie in [0, 1)");
    }
  } else {
    if (!(state.type2A > 0)) errors.push("Type II shape a must be > 0");
    if (!(state.type2B > 0)) errors.push("Type II shape b must be > 0");
  }
  if (!Number.isInteger(state.n) || state.n < 2 || state.n > SERVER_MAX_N) {
    errors.push(`n must be an integer in [2, ${SERVER_MAX_N}]`);
  }
  if (state.seedMode === "fixed") {
    if (!Number.isInteger(state.seedValue) || state.seedValue < 0 || state.seedValue > MAX_SAFE_SEED) {
      errors.push("seed must be an integer in [0, 2^53)");
    }
  }
  return errors;
}

/** Request body for the current controls; draft mode caps n for dragging. */
export function buildRequest(
  state: ControlState,
  opts: { draft?: boolean } = {},
): PosteriorRequestBody {
  const body: PosteriorRequestBody = {
    prior: priorShapes(state),
    alpha: alphaValue(state),
    type2: type2Value(state),
    n: opts.draft ? Math.min(state.n, DRAG_N) : state.n,
  };
  if (state.seedMode === "fixed") {
    body.seed = state.seedValue;
  }
  return body;
}

/** Populate controls from a scenario preset; the seed is pinned so the
 * displayed run reproduces the registry entry. */
export function applyScenario(state: ControlState, scenario: ScenarioSummary): ControlState {
  const next: ControlState = { ...state };
  next.priorMode = "shapes";
  next.priorA = scenario.prior.a;
  next.priorB = scenario.prior.b;
  const mk = meanKappaFromShapes(scenario.prior);
  next.priorMean = mk.mean;
  next.priorKappa = mk.kappa;
  const alphaText = String(scenario.alpha);
  next.alphaChoice =
    alphaText === "0.05" || alphaText === "0.01" || alphaText === "0.005"
      ? (alphaText as AlphaChoice)
      : "custom";
  next.alphaCustom = scenario.alpha;
  if (isPointType2(scenario.type2)) {
    next.type2Mode = "point";
    next.type2Point = scenario.type2.point;
  } else {
    next.type2Mode = "beta";
    next.type2A = scenario.type2.a;
    next.type2B = scenario.type2.b;
  }
  next.n = scenario.n;
  next.seedMode = "fixed";
  next.seedValue = scenario.seed;
  return next;
}

function fmt(x: number): string {
  return String(x);
}

/** Shell command reproducing the resolved request (seed always present). */
export function cliCommand(req: ResolvedRequest): string {
  const t2 = isPointType2(req.type2) ? fmt(req.type2.point) : `${fmt(req.type2.a)},${fmt(req.type2.b)}`;
  return [
    "nullpost compute",
    `--prior ${fmt(req.prior.a)},${fmt(req.prior.b)}`,
    `--alpha ${fmt(req.alpha)}`,
    `--type2 ${t2}`,
    `--n ${fmt(req.n)}`,
    `--seed ${fmt(req.seed)}`,
    "--format json",
  ].join(" ");
}

export interface DisplayModel {
  mean: string;
  ciLo: string;
  ciHi: string;
  ciLevel: string;
  n: string;
  seed: string;
  command: string;
}

/** Verbatim strings for the results panel, straight from the response. */
export function displayModel(resp: PosteriorResponse): DisplayModel {
  return {
    mean: fmt(resp.summary.mean),
    ciLo: fmt(resp.summary.ci[0]),
    ciHi: fmt(resp.summary.ci[1]),
    ciLevel: fmt(resp.summary.ci_level),
    n: fmt(resp.summary.n),
    seed: fmt(resp.request.seed),
    command: cliCommand(resp.request),
  };
}
