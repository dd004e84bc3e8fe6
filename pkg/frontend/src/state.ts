// Application state and the pure transforms the views render from.
// Keeping these free of DOM access makes replaying a session trivial:
// the same API responses and selections always rebuild the same state.

import type { ConceptPayload, LatticePayload, Mode, SearchPayload } from "./types.js";

export interface AppState {
  lattice: LatticePayload | null;
  search: SearchPayload | null;
  submittedTerms: string[];
  mode: Mode;
  selected: number | null;
  error: string | null;
  warning: string | null;
}

export function initialState(): AppState {
  return {
    lattice: null,
    search: null,
    submittedTerms: [],
    mode: "none",
    selected: null,
    error: null,
    warning: null,
  };
}

export function withLattice(state: AppState, lattice: LatticePayload): AppState {
  return { ...state, lattice, error: null };
}

export function withSearch(
  state: AppState,
  search: SearchPayload,
  submittedTerms: string[],
  mode: Mode,
): AppState {
  const warning = search.dropped_terms.length
    ? `not in the index: ${search.dropped_terms.join(", ")}`
    : null;
  return { ...state, search, submittedTerms, mode, warning, error: null };
}

export function withError(state: AppState, error: string): AppState {
  return { ...state, error };
}

export function withWarning(state: AppState, warning: string): AppState {
  return { ...state, warning };
}

export function clearSearch(state: AppState): AppState {
  return { ...state, search: null, submittedTerms: [], warning: null };
}

export function withSelection(state: AppState, selected: number | null): AppState {
  return { ...state, selected };
}

/** Concept id -> rank for every concept the search traversal visited. */
export function highlightRanks(state: AppState): Map<number, number> {
  const ranks = new Map<number, number>();
  if (!state.search) return ranks;
  for (const step of state.search.trail) {
    for (const id of step.concepts) ranks.set(id, step.rank);
  }
  return ranks;
}

/** Terms the reformulation added beyond what the user typed. */
export function addedTerms(state: AppState): string[] {
  if (!state.search) return [];
  const typed = new Set(state.submittedTerms.map((t) => t.replace(/^['"]|['"]$/g, "").toLowerCase()));
  return state.search.effective_terms.filter((t) => !typed.has(t));
}

export interface RankGroup {
  rank: number;
  docs: string[];
}

/** Entries grouped by rank, preserving the API's order untouched. */
export function resultsByRank(state: AppState): RankGroup[] {
  const groups: RankGroup[] = [];
  if (!state.search) return groups;
  for (const entry of state.search.entries) {
    const last = groups[groups.length - 1];
    if (last && last.rank === entry.rank) {
      last.docs.push(entry.doc);
    } else {
      groups.push({ rank: entry.rank, docs: [entry.doc] });
    }
  }
  return groups;
}

/**
 * The lattice as it looks with the query inserted: overlay-only concepts
 * appended, extents of grown concepts extended by the pseudo-object, and
 * the cover diff applied. Without a search, the base lattice unchanged.
 */
export function displayedLattice(state: AppState): LatticePayload | null {
  if (!state.lattice) return null;
  if (!state.search) return state.lattice;
  const { overlay, trail_concepts, pseudo_object, query_concept } = state.search;

  const grown = new Set(overlay.grown_concepts);
  const concepts: ConceptPayload[] = state.lattice.concepts.map((c) =>
    grown.has(c.id) ? { ...c, extent: [...c.extent, pseudo_object] } : c,
  );
  for (const extra of overlay.new_concepts) {
    const neighborhood = trail_concepts[String(extra.id)];
    concepts.push({
      id: extra.id,
      extent: extra.extent,
      intent: extra.intent,
      parents: neighborhood?.parents ?? [],
      children: neighborhood?.children ?? [],
      label_attributes: [],
      label_objects: extra.id === query_concept.id ? ["Query"] : [],
    });
  }

  const removed = new Set(overlay.removed_covers.map(([c, p]) => `${c}:${p}`));
  const covers: [number, number][] = state.lattice.covers
    .filter(([c, p]) => !removed.has(`${c}:${p}`))
    .concat(overlay.added_covers);

  let top = state.lattice.top;
  let bottom = state.lattice.bottom;
  const childless = new Set(concepts.map((c) => c.id));
  const parentless = new Set(concepts.map((c) => c.id));
  for (const [child, parent] of covers) {
    parentless.delete(child);
    childless.delete(parent);
  }
  if (parentless.size === 1) top = [...parentless][0]!;
  if (childless.size === 1) bottom = [...childless][0]!;
  return { concepts, covers, top, bottom };
}
