/** Canvas chart: overlaid densities on [0,1] with vertical interval markers. */
import type { Curve } from "./density";
import { curveMax } from "./density";

export interface SeriesSpec {
  curve: Curve;
  stroke: string;
  fill?: string;
  label: string;
}

export interface MarkerSpec {
  x: number;
  color: string;
}

export interface Frame {
  width: number;
  height: number;
  padLeft: number;
  padRight: number;
  padTop: number;
  padBottom: number;
  yMax: number;
}

export function makeFrame(width: number, height: number, series: SeriesSpec[]): Frame {
  let yMax = 0;
  for (const s of series) {
    yMax = Math.max(yMax, curveMax(s.curve));
  }
  if (yMax <= 0) yMax = 1;
  return {
    width,
    height,
    padLeft: 44,
    padRight: 12,
    padTop: 14,
    padBottom: 30,
    yMax: yMax * 1.08,
  };
}

export function xToPx(frame: Frame, x: number): number {
  return frame.padLeft + x * (frame.width - frame.padLeft - frame.padRight);
}

export function yToPx(frame: Frame, y: number): number {
  const h = frame.height - frame.padTop - frame.padBottom;
  return frame.padTop + (1 - Math.min(y, frame.yMax) / frame.yMax) * h;
}

export function render(
  canvas: HTMLCanvasElement,
  series: SeriesSpec[],
  markers: MarkerSpec[],
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const frame = makeFrame(canvas.width, canvas.height, series);
  ctx.clearRect(0, 0, frame.width, frame.height);

  // axes and x ticks
  ctx.strokeStyle = "#99a";
  ctx.fillStyle = "#667";
  ctx.lineWidth = 1;
  ctx.font = "11px system-ui, sans-serif";
  ctx.textAlign = "center";
  const y0 = yToPx(frame, 0);
  ctx.beginPath();
  ctx.moveTo(xToPx(frame, 0), y0);
  ctx.lineTo(xToPx(frame, 1), y0);
  ctx.stroke();
  for (let t = 0; t <= 10; t++) {
    const x = t / 10;
    const px = xToPx(frame, x);
    ctx.beginPath();
    ctx.moveTo(px, y0);
    ctx.lineTo(px, y0 + 4);
    ctx.stroke();
    if (t % 2 === 0) {
      ctx.fillText(x.toFixed(1), px, y0 + 16);
    }
  }

  for (const s of series) {
    const { xs, ys } = s.curve;
    if (xs.length === 0) continue;
    ctx.beginPath();
    ctx.moveTo(xToPx(frame, xs[0]), yToPx(frame, Math.min(ys[0], frame.yMax)));
    for (let i = 1; i < xs.length; i++) {
      ctx.lineTo(xToPx(frame, xs[i]), yToPx(frame, Math.min(ys[i], frame.yMax)));
    }
    if (s.fill) {
      ctx.save();
      ctx.lineTo(xToPx(frame, xs[xs.length - 1]), y0);
      ctx.lineTo(xToPx(frame, xs[0]), y0);
      ctx.closePath();
      ctx.fillStyle = s.fill;
      ctx.fill();
      ctx.restore();
      ctx.beginPath();
      ctx.moveTo(xToPx(frame, xs[0]), yToPx(frame, Math.min(ys[0], frame.yMax)));
      for (let i = 1; i < xs.length; i++) {
        ctx.lineTo(xToPx(frame, xs[i]), yToPx(frame, Math.min(ys[i], frame.yMax)));
      }
    }
    ctx.strokeStyle = s.stroke;
    ctx.lineWidth = 1.8;
    ctx.stroke();
  }

  // vertical interval markers
  for (const m of markers) {
    const px = xToPx(frame, m.x);
    ctx.save();
    ctx.strokeStyle = m.color;
    ctx.lineWidth = 1.4;
    ctx.setLineDash([5, 4]);
    ctx.beginPath();
    ctx.moveTo(px, frame.padTop);
    ctx.lineTo(px, y0);
    ctx.stroke();
    ctx.restore();
  }

  // legend
  ctx.textAlign = "left";
  let lx = frame.padLeft + 8;
  for (const s of series) {
    ctx.fillStyle = s.stroke;
    ctx.fillRect(lx, frame.padTop + 2, 14, 3);
    ctx.fillStyle = "#334";
    ctx.fillText(s.label, lx + 18, frame.padTop + 7);
    lx += 18 + ctx.measureText(s.label).width + 16;
  }
}

export function renderPlaceholder(canvas: HTMLCanvasElement, text: string): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.fillStyle = "#889";
  ctx.font = "13px system-ui, sans-serif";
  ctx.textAlign = "center";
  ctx.fillText(text, canvas.width / 2, canvas.height / 2);
}
