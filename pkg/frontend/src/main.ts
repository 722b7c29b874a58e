/** Wires the capture pad to the recognizer service. */

import { RecognizerClient } from "./api.js";
import { StrokeCapture } from "./capture.js";
import {
  dominantBar,
  overlayPositions,
  roseBars,
  toMathPoints,
} from "./geometry.js";
import type { CapturedStroke, ClassifyResponse } from "./types.js";

const TOP_N = 5;

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

function setBanner(text: string | null): void {
  const banner = byId<HTMLDivElement>("banner");
  banner.textContent = text ?? "";
  banner.classList.toggle("visible", text !== null);
}

function main(): void {
  const pad = byId<HTMLCanvasElement>("pad");
  const rose = byId<HTMLCanvasElement>("rose");
  const results = byId<HTMLOListElement>("results");
  const labelInput = byId<HTMLInputElement>("label");
  const labelOptions = byId<HTMLDataListElement>("label-options");
  const saveButton = byId<HTMLButtonElement>("save");
  const clearButton = byId<HTMLButtonElement>("clear");
  const counter = byId<HTMLSpanElement>("counter");
  const hint = byId<HTMLSpanElement>("hint");

  const ink = pad.getContext("2d");
  const roseCtx = rose.getContext("2d");
  const client = new RecognizerClient("");

  let lastStroke: CapturedStroke | null = null;
  let lastSaved = false;
  let savedCount = 0;

  function clearPad(): void {
    ink?.clearRect(0, 0, pad.width, pad.height);
  }

  function drawSegment(from: [number, number], to: [number, number]): void {
    if (!ink) return;
    ink.strokeStyle = "#1b1f24";
    ink.lineWidth = 2.5;
    ink.lineCap = "round";
    ink.beginPath();
    ink.moveTo(from[0], from[1]);
    ink.lineTo(to[0], to[1]);
    ink.stroke();
  }

  function drawOverlay(stroke: CapturedStroke, indices: number[]): void {
    if (!ink) return;
    for (const [x, y] of overlayPositions(stroke.points, indices)) {
      ink.beginPath();
      ink.arc(x, y, 5, 0, 2 * Math.PI);
      ink.fillStyle = "rgba(214, 69, 69, 0.85)";
      ink.fill();
    }
  }

  function drawRose(fdf: number[]): void {
    if (!roseCtx) return;
    roseCtx.clearRect(0, 0, rose.width, rose.height);
    const bars = roseBars(fdf, rose.width, rose.height);
    const strongest = dominantBar(fdf);
    for (const bar of bars) {
      roseCtx.fillStyle = bar.direction - 1 === strongest ? "#d64545" : "#4572d6";
      roseCtx.fillRect(bar.x, bar.y, bar.width, bar.height);
      roseCtx.fillStyle = "#555";
      roseCtx.font = "11px sans-serif";
      roseCtx.textAlign = "center";
      roseCtx.fillText(String(bar.direction), bar.x + bar.width / 2, rose.height - 2);
    }
  }

  function showResults(response: ClassifyResponse): void {
    results.replaceChildren();
    for (const entry of response.nbest.slice(0, TOP_N)) {
      const item = document.createElement("li");
      const name = document.createElement("span");
      name.className = "candidate";
      name.textContent = entry.label;
      const dist = document.createElement("span");
      dist.className = "distance";
      dist.textContent = entry.distance.toFixed(4);
      item.append(name, dist);
      item.addEventListener("click", () => {
        labelInput.value = entry.label;
      });
      results.append(item);
    }
    if (response.nbest.length > 0) {
      labelInput.placeholder = response.nbest[0].label;
    }
  }

  async function handleStroke(stroke: CapturedStroke): Promise<void> {
    lastStroke = stroke;
    lastSaved = false;
    saveButton.disabled = false;
    hint.textContent = "";
    try {
      const mathPoints = toMathPoints(stroke.points, pad.height);
      const response = await client.classify(mathPoints, TOP_N);
      setBanner(null);
      showResults(response);
      drawOverlay(stroke, response.critical_indices);
      drawRose(response.fdf);
    } catch (error) {
      if ((error as Error).name === "AbortError") return;
      setBanner(`recognizer unreachable: ${(error as Error).message}`);
    }
  }

  async function handleSave(): Promise<void> {
    if (!lastStroke) {
      hint.textContent = "draw a stroke first";
      return;
    }
    const label = labelInput.value.trim() || labelInput.placeholder.trim();
    if (!label) {
      hint.textContent = "pick or type a label";
      return;
    }
    if (lastSaved && !window.confirm("Already saved this stroke. Save again?")) {
      return;
    }
    try {
      await client.saveStroke(label, toMathPoints(lastStroke.points, pad.height));
      setBanner(null);
      lastSaved = true;
      savedCount += 1;
      counter.textContent = String(savedCount);
      hint.textContent = `saved as "${label}"`;
    } catch (error) {
      setBanner(`save failed: ${(error as Error).message}`);
    }
  }

  new StrokeCapture(pad, {
    onStroke: (stroke) => {
      void handleStroke(stroke);
    },
    onMove: drawSegment,
    onDiscard: (reason) => {
      hint.textContent = reason;
    },
  });

  pad.addEventListener("pointerdown", () => {
    clearPad();
    results.replaceChildren();
  });

  clearButton.addEventListener("click", () => {
    clearPad();
    results.replaceChildren();
    lastStroke = null;
    saveButton.disabled = true;
    hint.textContent = "";
  });

  saveButton.addEventListener("click", () => {
    void handleSave();
  });
  saveButton.disabled = true;

  client
    .getModel()
    .then((model) => {
      labelOptions.replaceChildren();
      for (const label of model.labels) {
        const option = document.createElement("option");
        option.value = label;
        labelOptions.append(option);
      }
      if (model.labels.length === 0) {
        setBanner("no model loaded: train one and restart the service");
      } else {
        hint.textContent = `${model.labels.length} classes ready`;
      }
    })
    .catch((error) => {
      setBanner(`recognizer unreachable: ${(error as Error).message}`);
    });
}

document.addEventListener("DOMContentLoaded", main);
