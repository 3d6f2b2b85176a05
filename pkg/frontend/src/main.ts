/** DOM wiring: controls -> debounced compute -> overlaid chart + verbatim results. */
import { ApiClient, ApiError } from "./api";
import { render, renderPlaceholder } from "./chart";
import { histogramToDensity, previewCurve } from "./density";
import { Debouncer, SequenceGate } from "./scheduler";
import {
  applyScenario,
  buildRequest,
  ControlState,
  DEFAULT_STATE,
  displayModel,
  priorShapes,
  validate,
} from "./state";
import type { PosteriorResponse, PriorPreview, ScenarioSummary } from "./types";
import { isPointType2 } from "./types";

const PRIOR_COLOR = "#3461c1";
const PRIOR_FILL = "rgba(52, 97, 193, 0.15)";
const POSTERIOR_COLOR = "#555c66";
const POSTERIOR_FILL = "rgba(110, 116, 125, 0.25)";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function apiBase(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  return override ?? "";
}

const api = new ApiClient(apiBase());
let state: ControlState = { ...DEFAULT_STATE };
let lastPreview: PriorPreview | null = null;
let lastResponse: PosteriorResponse | null = null;
const computeGate = new SequenceGate();
const previewGate = new SequenceGate();
let computeAbort: AbortController | null = null;

function showError(message: string): void {
  const panel = el<HTMLDivElement>("error-panel");
  panel.textContent = message;
  panel.classList.remove("hidden");
}

function clearError(): void {
  el<HTMLDivElement>("error-panel").classList.add("hidden");
}

function syncControlsFromState(): void {
  el<HTMLInputElement>("prior-mode-shapes").checked = state.priorMode === "shapes";
  el<HTMLInputElement>("prior-mode-mean").checked = state.priorMode === "mean";
  el<HTMLInputElement>("prior-a").value = String(state.priorA);
  el<HTMLInputElement>("prior-b").value = String(state.priorB);
  el<HTMLInputElement>("prior-mean").value = String(state.priorMean);
  el<HTMLInputElement>("prior-kappa").value = String(state.priorKappa);
  el<HTMLSpanElement>("prior-mean-value").textContent = Number(state.priorMean).toFixed(2);
  el<HTMLSpanElement>("prior-kappa-value").textContent = String(Math.round(state.priorKappa));
  for (const choice of ["0.05", "0.01", "0.005", "custom"]) {
    el<HTMLInputElement>(`alpha-${choice}`).checked = state.alphaChoice === choice;
  }
  el<HTMLInputElement>("alpha-custom-value").value = String(state.alphaCustom);
  el<HTMLInputElement>("alpha-custom-value").disabled = state.alphaChoice !== "custom";
  el<HTMLInputElement>("type2-mode-point").checked = state.type2Mode === "point";
  el<HTMLInputElement>("type2-mode-beta").checked = state.type2Mode === "beta";
  el<HTMLInputElement>("type2-point").value = String(state.type2Point);
  el<HTMLSpanElement>("type2-point-value").textContent = Number(state.type2Point).toFixed(2);
  el<HTMLInputElement>("type2-a").value = String(state.type2A);
  el<HTMLInputElement>("type2-b").value = String(state.type2B);
  el<HTMLInputElement>("mc-n").value = String(state.n);
  el<HTMLInputElement>("seed-auto").checked = state.seedMode === "auto";
  el<HTMLInputElement>("seed-fixed").checked = state.seedMode === "fixed";
  el<HTMLInputElement>("seed-value").value = String(state.seedValue);
  el<HTMLInputElement>("seed-value").disabled = state.seedMode !== "fixed";
  el<HTMLFieldSetElement>("prior-shapes-fields").classList.toggle("off", state.priorMode !== "shapes");
  el<HTMLFieldSetElement>("prior-mean-fields").classList.toggle("off", state.priorMode !== "mean");
  el<HTMLFieldSetElement>("type2-point-fields").classList.toggle("off", state.type2Mode !== "point");
  el<HTMLFieldSetElement>("type2-beta-fields").classList.toggle("off", state.type2Mode !== "beta");
}

function readControlsIntoState(): void {
  state.priorMode = el<HTMLInputElement>("prior-mode-mean").checked ? "mean" : "shapes";
  state.priorA = Number(el<HTMLInputElement>("prior-a").value);
  state.priorB = Number(el<HTMLInputElement>("prior-b").value);
  state.priorMean = Number(el<HTMLInputElement>("prior-mean").value);
  state.priorKappa = Number(el<HTMLInputElement>("prior-kappa").value);
  if (el<HTMLInputElement>("alpha-custom").checked) state.alphaChoice = "custom";
  else if (el<HTMLInputElement>("alpha-0.01").checked) state.alphaChoice = "0.01";
  else if (el<HTMLInputElement>("alpha-0.005").checked) state.alphaChoice = "0.005";
  else state.alphaChoice = "0.05";
  state.alphaCustom = Number(el<HTMLInputElement>("alpha-custom-value").value);
  state.type2Mode = el<HTMLInputElement>("type2-mode-beta").checked ? "beta" : "point";
  state.type2Point = Number(el<HTMLInputElement>("type2-point").value);
  state.type2A = Number(el<HTMLInputElement>("type2-a").value);
  state.type2B = Number(el<HTMLInputElement>("type2-b").value);
  state.n = Number(el<HTMLInputElement>("mc-n").value);
  state.seedMode = el<HTMLInputElement>("seed-fixed").checked ? "fixed" : "auto";
  state.seedValue = Number(el<HTMLInputElement>("seed-value").value);
}

function redraw(): void {
  const canvas = el<HTMLCanvasElement>("chart");
  if (!lastPreview && !lastResponse) {
    renderPlaceholder(canvas, "waiting for the compute service");
    return;
  }
  const series = [];
  const markers = [];
  if (lastPreview) {
    series.push({
      curve: previewCurve(lastPreview),
      stroke: PRIOR_COLOR,
      fill: PRIOR_FILL,
      label: "prior",
    });
    markers.push({ x: lastPreview.ci[0], color: PRIOR_COLOR });
    markers.push({ x: lastPreview.ci[1], color: PRIOR_COLOR });
  }
  if (lastResponse) {
    series.push({
      curve: histogramToDensity(lastResponse.summary),
      stroke: POSTERIOR_COLOR,
      fill: POSTERIOR_FILL,
      label: "posterior | significant",
    });
    markers.push({ x: lastResponse.summary.ci[0], color: POSTERIOR_COLOR });
    markers.push({ x: lastResponse.summary.ci[1], color: POSTERIOR_COLOR });
  }
  render(canvas, series, markers);
}

function showResults(): void {
  if (!lastResponse) return;
  const dm = displayModel(lastResponse);
  el<HTMLElement>("result-mean").textContent = dm.mean;
  el<HTMLElement>("result-ci").textContent = `[${dm.ciLo}, ${dm.ciHi}]`;
  el<HTMLElement>("result-meta").textContent =
    `ci_level ${dm.ciLevel}, n ${dm.n}, seed ${dm.seed}`;
  el<HTMLElement>("result-seed").textContent = dm.seed;
  el<HTMLElement>("cli-command").textContent = dm.command;
}

async function refreshPreview(): Promise<void> {
  const shapes = priorShapes(state);
  if (!(shapes.a > 0) || !(shapes.b > 0)) return;
  const seq = previewGate.issue();
  try {
    const preview = await api.priorPreview(shapes.a, shapes.b);
    if (!previewGate.accept(seq)) return;
    lastPreview = preview;
    redraw();
  } catch (err) {
    if ((err as Error).name === "AbortError") return;
    showError(`prior preview failed: ${(err as Error).message}`);
  }
}

async function compute(opts: { draft: boolean }): Promise<void> {
  const errors = validate(state);
  if (errors.length) {
    showError(errors.join("; "));
    return;
  }
  clearError();
  computeAbort?.abort();
  const controller = new AbortController();
  computeAbort = controller;
  const seq = computeGate.issue();
  el<HTMLElement>("status").textContent = opts.draft ? "computing (draft)..." : "computing...";
  try {
    const resp = await api.computePosterior(buildRequest(state, opts), controller.signal);
    if (!computeGate.accept(seq)) return;
    lastResponse = resp;
    showResults();
    redraw();
    el<HTMLElement>("status").textContent = opts.draft ? `draft n=${resp.summary.n}` : "";
  } catch (err) {
    if ((err as Error).name === "AbortError") return;
    el<HTMLElement>("status").textContent = "";
    const detail = err instanceof ApiError ? err.message : String(err);
    showError(`compute failed: ${detail}`);
  }
}

const draftCompute = new Debouncer(() => void compute({ draft: true }), 300);
const previewRefresh = new Debouncer(() => void refreshPreview(), 120);

function onControlInput(): void {
  readControlsIntoState();
  syncControlsFromState();
  previewRefresh.trigger();
  draftCompute.trigger();
}

function onControlCommit(): void {
  readControlsIntoState();
  syncControlsFromState();
  draftCompute.cancel();
  previewRefresh.flush();
  void compute({ draft: false });
}

function wireControls(): void {
  const inputs = document.querySelectorAll<HTMLInputElement>("#controls input");
  inputs.forEach((input) => {
    if (input.type === "range") {
      input.addEventListener("input", onControlInput);
      input.addEventListener("change", onControlCommit);
    } else {
      input.addEventListener("change", onControlCommit);
    }
  });
  el<HTMLButtonElement>("copy-btn").addEventListener("click", () => {
    const text = el<HTMLElement>("cli-command").textContent ?? "";
    void navigator.clipboard?.writeText(text);
  });
}

function galleryButton(scenario: ScenarioSummary): HTMLButtonElement {
  const btn = document.createElement("button");
  btn.className = "preset";
  btn.textContent = scenario.id;
  const t2 = isPointType2(scenario.type2)
    ? `Type II ${scenario.type2.point}`
    : `Type II ~ Beta(${scenario.type2.a},${scenario.type2.b})`;
  btn.title = `${scenario.label} — prior Beta(${scenario.prior.a},${scenario.prior.b}), ` +
    `alpha ${scenario.alpha}, ${t2}`;
  btn.addEventListener("click", () => {
    state = applyScenario(state, scenario);
    syncControlsFromState();
    previewRefresh.flush();
    void compute({ draft: false });
  });
  return btn;
}

async function loadGallery(): Promise<void> {
  const gallery = el<HTMLDivElement>("gallery");
  try {
    const scenarios = await api.scenarios();
    gallery.replaceChildren(...scenarios.map(galleryButton));
  } catch {
    const note = document.createElement("button");
    note.className = "preset";
    note.disabled = true;
    note.textContent = "presets unavailable";
    note.title = "compute service is offline";
    gallery.replaceChildren(note);
  }
}

async function boot(): Promise<void> {
  syncControlsFromState();
  wireControls();
  redraw();
  await loadGallery();
  await refreshPreview();
  await compute({ draft: false });
}

void boot();
