/** Pointer-event ink capture.
 *
 * One stroke spans pointer-down to pointer-up. Points are recorded in
 * canvas coordinates at native event rate (no throttling, no client-side
 * smoothing or resampling: the science stays server-side). Single-point
 * taps are discarded with a hint instead of being submitted.
 */

import type { CapturedStroke, Point } from "./types.js";

export interface CaptureCallbacks {
  /** Fires once per completed stroke (>= 2 points). */
  onStroke: (stroke: CapturedStroke) => void;
  /** Live feedback while the pen is down. */
  onMove?: (from: Point, to: Point) => void;
  /** A tap or other unusable input was discarded. */
  onDiscard?: (reason: string) => void;
}

interface PointerLike {
  clientX: number;
  clientY: number;
  pointerId?: number;
}

export class StrokeCapture {
  private target: HTMLElement;
  private callbacks: CaptureCallbacks;
  private points: Point[] = [];
  private startedAt = 0;
  private drawing = false;

  constructor(target: HTMLElement, callbacks: CaptureCallbacks) {
    this.target = target;
    this.callbacks = callbacks;
    target.addEventListener("pointerdown", this.handleDown as EventListener);
    target.addEventListener("pointermove", this.handleMove as EventListener);
    target.addEventListener("pointerup", this.handleUp as EventListener);
    target.addEventListener("pointercancel", this.handleCancel as EventListener);
  }

  get active(): boolean {
    return this.drawing;
  }

  private toCanvas(event: PointerLike): Point {
    const rect = this.target.getBoundingClientRect();
    return [event.clientX - rect.left, event.clientY - rect.top];
  }

  private handleDown = (event: PointerLike & Event): void => {
    this.drawing = true;
    this.startedAt = Date.now();
    this.points = [this.toCanvas(event)];
    if (event.pointerId !== undefined && "setPointerCapture" in this.target) {
      try {
        (this.target as HTMLElement & {
          setPointerCapture(id: number): void;
        }).setPointerCapture(event.pointerId);
      } catch {
        // capture is best-effort; synthetic test events have no real id
      }
    }
  };

  private handleMove = (event: PointerLike & Event): void => {
    if (!this.drawing) return;
    const point = this.toCanvas(event);
    const previous = this.points[this.points.length - 1];
    this.points.push(point);
    this.callbacks.onMove?.(previous, point);
  };

  private handleUp = (event: PointerLike & Event): void => {
    if (!this.drawing) return;
    this.drawing = false;
    const point = this.toCanvas(event);
    const previous = this.points[this.points.length - 1];
    if (point[0] !== previous[0] || point[1] !== previous[1]) {
      this.points.push(point);
      this.callbacks.onMove?.(previous, point);
    }
    const stroke: CapturedStroke = {
      points: this.points,
      startedAt: this.startedAt,
      endedAt: Date.now(),
    };
    this.points = [];
    if (stroke.points.length < 2) {
      this.callbacks.onDiscard?.("draw a stroke, not a tap");
      return;
    }
    this.callbacks.onStroke(stroke);
  };

  private handleCancel = (): void => {
    this.drawing = false;
    this.points = [];
    this.callbacks.onDiscard?.("stroke cancelled");
  };
}
