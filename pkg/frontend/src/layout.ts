// Layered drawing of the Hasse diagram.
//
// Every cover edge joins a parent (strictly smaller intent) to a child
// (strictly larger intent), so laying concepts out by intent size gives a
// proper upward drawing: distinct intent sizes are compacted into
// consecutive layers, the supremum alone on layer 0. Within each layer a
// few barycenter sweeps reduce crossings; x coordinates spread nodes
// evenly per layer.

export interface LayoutInput {
  id: number;
  intent: string[];
}

export interface PlacedNode {
  id: number;
  layer: number;
  x: number;
  y: number;
}

export interface Layout {
  nodes: Map<number, PlacedNode>;
  layerCount: number;
  width: number;
  height: number;
}

export function assignLayers(concepts: LayoutInput[]): Map<number, number> {
  const sizes = [...new Set(concepts.map((c) => c.intent.length))].sort((a, b) => a - b);
  const layerOfSize = new Map(sizes.map((s, i) => [s, i]));
  return new Map(concepts.map((c) => [c.id, layerOfSize.get(c.intent.length)!]));
}

const SWEEPS = 4;

export function layoutLattice(
  concepts: LayoutInput[],
  covers: [number, number][],
  width = 900,
  layerGap = 110,
  margin = 60,
): Layout {
  const layerOf = assignLayers(concepts);
  const layers: number[][] = [];
  for (const c of concepts) {
    const layer = layerOf.get(c.id)!;
    (layers[layer] ??= []).push(c.id);
  }
  layers.forEach((ids) => ids.sort((a, b) => a - b));

  const up = new Map<number, number[]>(); // child -> parents
  const down = new Map<number, number[]>(); // parent -> children
  for (const [child, parent] of covers) {
    (up.get(child) ?? up.set(child, []).get(child)!).push(parent);
    (down.get(parent) ?? down.set(parent, []).get(parent)!).push(child);
  }

  const position = new Map<number, number>();
  const refresh = () =>
    layers.forEach((ids) => ids.forEach((id, i) => position.set(id, i)));
  refresh();

  const barycenter = (id: number, neighbors: Map<number, number[]>): number => {
    const adj = neighbors.get(id);
    if (!adj || adj.length === 0) return position.get(id)!;
    return adj.reduce((sum, n) => sum + position.get(n)!, 0) / adj.length;
  };

  for (let sweep = 0; sweep < SWEEPS; sweep += 1) {
    const downward = sweep % 2 === 0;
    const order = downward ? layers : [...layers].reverse();
    for (const ids of order) {
      ids.sort((a, b) => {
        const diff = barycenter(a, downward ? up : down) - barycenter(b, downward ? up : down);
        return diff !== 0 ? diff : a - b;
      });
      refresh();
    }
  }

  const nodes = new Map<number, PlacedNode>();
  layers.forEach((ids, layer) => {
    ids.forEach((id, i) => {
      nodes.set(id, {
        id,
        layer,
        x: margin + ((i + 0.5) * (width - 2 * margin)) / ids.length,
        y: margin + layer * layerGap,
      });
    });
  });
  return {
    nodes,
    layerCount: layers.length,
    width,
    height: margin * 2 + Math.max(0, layers.length - 1) * layerGap,
  };
}
