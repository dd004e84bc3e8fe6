// Payload shapes of the retrieval service's JSON API.

export interface ConceptPayload {
  id: number;
  extent: string[];
  intent: string[];
  parents: number[];
  children: number[];
  label_attributes: string[];
  label_objects: string[];
}

export interface LatticePayload {
  concepts: ConceptPayload[];
  covers: [number, number][]; // [child, parent]
  top: number;
  bottom: number;
}

export interface SearchEntry {
  rank: number;
  doc: string;
}

export interface TrailStep {
  rank: number;
  concepts: number[];
}

export interface NeighborhoodPayload {
  extent: string[];
  intent: string[];
  parents: number[];
  children: number[];
}

export interface OverlayDiff {
  new_concepts: { id: number; extent: string[]; intent: string[] }[];
  grown_concepts: number[];
  added_covers: [number, number][];
  removed_covers: [number, number][];
}

export interface SearchPayload {
  entries: SearchEntry[];
  dropped_terms: string[];
  effective_terms: string[];
  pseudo_object: string;
  query_concept: { id: number; extent: string[]; intent: string[]; new: boolean };
  trail: TrailStep[];
  trail_concepts: Record<string, NeighborhoodPayload>;
  overlay: OverlayDiff;
}

export interface DocumentPayload {
  id: string;
  title: string;
  authors: string[];
  terms: string[];
}

export interface ApiErrorBody {
  error: { code: string; message: string; details: Record<string, unknown> };
}

export type Mode = "none" | "generalize" | "specialize";
