// DOM rendering. Each render function rebuilds its region from state, so
// the view is always a pure function of (state, layout).

import { layoutLattice } from "./layout.js";
import {
  addedTerms,
  highlightRanks,
  resultsByRank,
  displayedLattice,
  type AppState,
} from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, String(value));
  return el;
}

export function renderDiagram(
  svg: SVGSVGElement,
  state: AppState,
  onSelect: (id: number) => void,
): void {
  svg.replaceChildren();
  const lattice = displayedLattice(state);
  if (!lattice) return;

  const layout = layoutLattice(lattice.concepts, lattice.covers);
  svg.setAttribute("viewBox", `0 0 ${layout.width} ${layout.height}`);
  svg.dataset.layers = String(layout.layerCount);
  const ranks = highlightRanks(state);
  const maxRank = Math.max(0, ...ranks.values());

  const edgeGroup = svgElement("g", { class: "edges" });
  for (const [child, parent] of lattice.covers) {
    const a = layout.nodes.get(parent);
    const b = layout.nodes.get(child);
    if (!a || !b) continue;
    edgeGroup.append(
      svgElement("line", { x1: a.x, y1: a.y, x2: b.x, y2: b.y, class: "edge" }),
    );
  }
  svg.append(edgeGroup);

  const nodeGroup = svgElement("g", { class: "nodes" });
  for (const concept of lattice.concepts) {
    const placed = layout.nodes.get(concept.id);
    if (!placed) continue;
    const classes = ["node"];
    if (concept.id === lattice.top) classes.push("node--top");
    if (concept.id === lattice.bottom) classes.push("node--bottom");
    const rank = ranks.get(concept.id);
    if (rank !== undefined) classes.push("node--highlight");
    if (state.search && concept.id === state.search.query_concept.id) {
      classes.push("node--query");
    }
    if (concept.id === state.selected) classes.push("node--selected");

    const g = svgElement("g", {
      class: classes.join(" "),
      transform: `translate(${placed.x}, ${placed.y})`,
    });
    g.dataset.concept = String(concept.id);
    g.dataset.layer = String(placed.layer);
    if (rank !== undefined) {
      g.dataset.rank = String(rank);
      const tint = maxRank === 0 ? 0 : rank / maxRank;
      g.style.setProperty("--rank-tint", tint.toFixed(3));
    }
    g.append(svgElement("circle", { r: 14 }));

    const attrLabel = concept.label_attributes.join(", ");
    if (attrLabel) {
      const text = svgElement("text", { y: -22, class: "label label--attr" });
      text.textContent = attrLabel;
      g.append(text);
    }
    const objLabel = concept.label_objects.join(", ");
    if (objLabel) {
      const text = svgElement("text", { y: 32, class: "label label--obj" });
      text.textContent = objLabel;
      g.append(text);
    }
    const title = svgElement("title", {});
    title.textContent =
      `intent: {${concept.intent.join(", ")}}\nextent: {${concept.extent.join(", ")}}`;
    g.append(title);
    g.addEventListener("click", () => onSelect(concept.id));
    nodeGroup.append(g);
  }
  svg.append(nodeGroup);
}

export function renderResults(
  container: HTMLElement,
  state: AppState,
  titles: Map<string, string>,
): void {
  container.replaceChildren();
  if (!state.search) {
    const hint = document.createElement("p");
    hint.className = "hint";
    hint.textContent = "Submit a query to rank documents.";
    container.append(hint);
    return;
  }
  const groups = resultsByRank(state);
  if (groups.length === 0) {
    const empty = document.createElement("p");
    empty.className = "hint";
    empty.textContent = "No document shares a term with this query.";
    container.append(empty);
    return;
  }
  for (const group of groups) {
    const section = document.createElement("section");
    section.className = "rank-group";
    const heading = document.createElement("h3");
    heading.textContent = `rank ${group.rank}`;
    section.append(heading);
    const list = document.createElement("ol");
    for (const doc of group.docs) {
      const item = document.createElement("li");
      item.dataset.doc = doc;
      item.dataset.rank = String(group.rank);
      const title = titles.get(doc);
      item.textContent = title ? `${doc} — ${title}` : doc;
      list.append(item);
    }
    section.append(list);
    container.append(section);
  }
}

export function renderChips(
  container: HTMLElement,
  state: AppState,
  onRemove: (term: string) => void,
): void {
  container.replaceChildren();
  for (const term of addedTerms(state)) {
    const chip = document.createElement("button");
    chip.type = "button";
    chip.className = "chip";
    chip.dataset.term = term;
    chip.textContent = `${term} ×`;
    chip.title = "added by reformulation; click to drop and re-query";
    chip.addEventListener("click", () => onRemove(term));
    container.append(chip);
  }
}

export function renderNotices(banner: HTMLElement, state: AppState, onRetry: () => void): void {
  banner.replaceChildren();
  banner.hidden = !state.error && !state.warning;
  if (state.error) {
    banner.className = "banner banner--error";
    const text = document.createElement("span");
    text.textContent = state.error;
    const retry = document.createElement("button");
    retry.type = "button";
    retry.textContent = "retry";
    retry.addEventListener("click", onRetry);
    banner.append(text, retry);
  } else if (state.warning) {
    banner.className = "banner banner--warning";
    const text = document.createElement("span");
    text.textContent = state.warning;
    banner.append(text);
  }
}

export function renderInspector(
  panel: HTMLElement,
  state: AppState,
  titles: Map<string, string>,
): void {
  panel.replaceChildren();
  const lattice = displayedLattice(state);
  if (!lattice || state.selected === null) {
    panel.hidden = true;
    return;
  }
  const concept = lattice.concepts.find((c) => c.id === state.selected);
  if (!concept) {
    panel.hidden = true;
    return;
  }
  panel.hidden = false;
  const heading = document.createElement("h3");
  heading.textContent = `concept ${concept.id}`;
  panel.append(heading);

  const intent = document.createElement("p");
  intent.className = "inspector-intent";
  intent.textContent = concept.intent.length
    ? `terms: ${concept.intent.join(", ")}`
    : "terms: (none)";
  panel.append(intent);

  const list = document.createElement("ul");
  list.className = "inspector-extent";
  for (const doc of concept.extent) {
    const item = document.createElement("li");
    const title = titles.get(doc);
    item.textContent = title ? `${doc} — ${title}` : doc;
    list.append(item);
  }
  if (!concept.extent.length) {
    const item = document.createElement("li");
    item.textContent = "(no documents)";
    list.append(item);
  }
  panel.append(list);
}

export function renderEffectiveTerms(container: HTMLElement, state: AppState): void {
  container.replaceChildren();
  if (!state.search) return;
  const text = document.createElement("span");
  text.textContent = `effective: ${state.search.effective_terms.join(", ")}`;
  container.append(text);
}
