/** Shared types for the /api contract and the capture pad. */

export type Point = [number, number];

export interface NBestEntry {
  label: string;
  distance: number;
}

export interface ClassifyResponse {
  nbest: NBestEntry[];
  fdf: number[];
  critical_indices: number[];
}

export interface ModelInfo {
  labels: string[];
  meta: {
    created_at?: string;
    trained_on?: number;
    smoothing?: { levels: number; mode: string; threshold: number };
  };
}

/** One pen trace in canvas coordinates (y grows downward). */
export interface CapturedStroke {
  points: Point[];
  startedAt: number;
  endedAt: number;
}
