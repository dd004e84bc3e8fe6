import { ApiClient, ApiError } from "./api.js";
import {
  initialState,
  withError,
  withLattice,
  withSearch,
  withSelection,
  withWarning,
  type AppState,
} from "./state.js";
import {
  renderChips,
  renderDiagram,
  renderEffectiveTerms,
  renderInspector,
  renderNotices,
  renderResults,
} from "./view.js";
import type { Mode } from "./types.js";

/** Split a query line into terms; quoted phrases stay whole. */
export function parseTerms(input: string): string[] {
  const terms: string[] = [];
  const pattern = /"([^"]+)"|'([^']+)'|(\S+)/g;
  let match: RegExpExecArray | null;
  while ((match = pattern.exec(input)) !== null) {
    const phrase = match[1] ?? match[2];
    terms.push(phrase !== undefined ? `'${phrase}'` : match[3]!);
  }
  return terms;
}

interface Elements {
  form: HTMLFormElement;
  input: HTMLInputElement;
  modes: HTMLInputElement[];
  diagram: SVGSVGElement;
  results: HTMLElement;
  chips: HTMLElement;
  banner: HTMLElement;
  inspector: HTMLElement;
  effective: HTMLElement;
}

export class App {
  state: AppState = initialState();
  private titles = new Map<string, string>();
  private inflight: AbortController | null = null;
  private lastAction: (() => void) | null = null;

  constructor(private readonly api: ApiClient, private readonly el: Elements) {
    el.form.addEventListener("submit", (event) => {
      event.preventDefault();
      this.submit();
    });
    for (const radio of el.modes) {
      radio.addEventListener("change", () => {
        if (radio.checked) this.setMode(radio.value as Mode);
      });
    }
  }

  async start(): Promise<void> {
    this.lastAction = () => void this.start();
    try {
      const lattice = await this.api.lattice();
      this.state = withLattice(this.state, lattice);
      await this.fetchTitles(lattice.concepts.flatMap((c) => c.extent));
    } catch (err) {
      this.state = withError(this.state, describe(err));
    }
    this.render();
  }

  /** Submit the current input; mode toggles re-use the last raw terms. */
  submit(terms?: string[]): void {
    const raw = terms ?? parseTerms(this.el.input.value);
    if (raw.length === 0) {
      this.state = withWarning(this.state, "type at least one term");
      this.render();
      return;
    }
    this.lastAction = () => this.submit(raw);
    // a newer submission cancels the one in flight
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    this.api
      .search(raw, this.state.mode)
      .then((payload) => {
        if (controller.signal.aborted) return;
        this.state = withSearch(this.state, payload, raw, this.state.mode);
        this.render();
      })
      .catch((err) => {
        if (controller.signal.aborted) return;
        if (err instanceof ApiError && err.code === "no_known_terms") {
          // inline message only; the previous result and highlights stay
          this.state = withWarning(this.state, describe(err));
        } else {
          this.state = withError(this.state, describe(err));
        }
        this.render();
      });
  }

  setMode(mode: Mode): void {
    this.state = { ...this.state, mode };
    if (this.state.submittedTerms.length) {
      this.submit(this.state.submittedTerms);
    }
  }

  /** Chip removal: drop one expansion term and re-query it explicitly. */
  removeTerm(term: string): void {
    if (!this.state.search) return;
    const remaining = this.state.search.effective_terms
      .filter((t) => t !== term)
      .map((t) => (t.includes(" ") ? `'${t}'` : t));
    this.state = { ...this.state, mode: "none" };
    this.syncModeRadios();
    this.submit(remaining);
  }

  select(id: number): void {
    this.state = withSelection(this.state, this.state.selected === id ? null : id);
    this.render();
  }

  retry(): void {
    this.lastAction?.();
  }

  private async fetchTitles(docs: string[]): Promise<void> {
    const wanted = [...new Set(docs)].filter((d) => !this.titles.has(d));
    await Promise.all(
      wanted.map(async (doc) => {
        try {
          const payload = await this.api.document(doc);
          if (payload.title) this.titles.set(doc, payload.title);
        } catch {
          // pseudo-objects and synthetic contexts have no metadata
        }
      }),
    );
  }

  private syncModeRadios(): void {
    for (const radio of this.el.modes) radio.checked = radio.value === this.state.mode;
  }

  render(): void {
    renderDiagram(this.el.diagram, this.state, (id) => this.select(id));
    renderResults(this.el.results, this.state, this.titles);
    renderChips(this.el.chips, this.state, (term) => this.removeTerm(term));
    renderNotices(this.el.banner, this.state, () => this.retry());
    renderInspector(this.el.inspector, this.state, this.titles);
    renderEffectiveTerms(this.el.effective, this.state);
  }
}

function describe(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}

export function mount(root: Document, base = ""): App {
  const el: Elements = {
    form: root.querySelector("#query-form") as HTMLFormElement,
    input: root.querySelector("#query-input") as HTMLInputElement,
    modes: [...root.querySelectorAll<HTMLInputElement>("input[name=mode]")],
    diagram: root.querySelector("#diagram") as unknown as SVGSVGElement,
    results: root.querySelector("#results") as HTMLElement,
    chips: root.querySelector("#chips") as HTMLElement,
    banner: root.querySelector("#banner") as HTMLElement,
    inspector: root.querySelector("#inspector") as HTMLElement,
    effective: root.querySelector("#effective-terms") as HTMLElement,
  };
  return new App(new ApiClient(base), el);
}

if (typeof window !== "undefined" && !("__LATTIR_TEST__" in globalThis)) {
  const app = mount(document);
  void app.start();
}
