// Client-side force-directed layout. The engine exports structure only;
// positions are computed here, deterministically (hash-seeded starts,
// fixed iteration count), so the same response always renders the same.

export interface Point {
  x: number;
  y: number;
}

function hashString(value: string): number {
  let h = 2166136261;
  for (const ch of value) {
    h ^= ch.codePointAt(0)!;
    h = Math.imul(h, 16777619);
  }
  return h >>> 0;
}

export function forceLayout(nodeIds: readonly string[],
                            edges: readonly [string, string][],
                            width = 840, height = 560,
                            iterations = 150): Map<string, Point> {
  const n = nodeIds.length;
  const positions = new Map<string, Point>();
  if (n === 0) return positions;

  for (const id of nodeIds) {
    const h = hashString(id);
    const angle = ((h % 3600) / 3600) * 2 * Math.PI;
    const radius = 0.12 * Math.min(width, height)
      * (1 + ((h >>> 12) % 1000) / 500);
    positions.set(id, {
      x: width / 2 + radius * Math.cos(angle),
      y: height / 2 + radius * Math.sin(angle),
    });
  }
  if (n === 1) return positions;

  const ideal = 0.9 * Math.sqrt((width * height) / n);
  const ids = [...nodeIds];
  for (let it = 0; it < iterations; it++) {
    const temperature =
      0.12 * Math.min(width, height) * (1 - it / iterations) + 0.5;
    const shift = new Map<string, Point>(ids.map((id) => [id, { x: 0, y: 0 }]));

    for (let i = 0; i < n; i++) {
      const a = positions.get(ids[i])!;
      for (let j = i + 1; j < n; j++) {
        const b = positions.get(ids[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let dist = Math.hypot(dx, dy);
        if (dist < 0.01) {
          // deterministic nudge for coincident nodes
          dx = 0.01 * ((i - j) % 3);
          dy = 0.01;
          dist = Math.hypot(dx, dy);
        }
        const repulse = (ideal * ideal) / dist;
        const sa = shift.get(ids[i])!;
        const sb = shift.get(ids[j])!;
        sa.x += (dx / dist) * repulse;
        sa.y += (dy / dist) * repulse;
        sb.x -= (dx / dist) * repulse;
        sb.y -= (dy / dist) * repulse;
      }
    }

    for (const [u, v] of edges) {
      const a = positions.get(u);
      const b = positions.get(v);
      if (!a || !b) continue;
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const dist = Math.max(0.01, Math.hypot(dx, dy));
      const attract = (dist * dist) / ideal;
      const su = shift.get(u)!;
      const sv = shift.get(v)!;
      su.x -= (dx / dist) * attract;
      su.y -= (dy / dist) * attract;
      sv.x += (dx / dist) * attract;
      sv.y += (dy / dist) * attract;
    }

    for (const id of ids) {
      const p = positions.get(id)!;
      const s = shift.get(id)!;
      const magnitude = Math.max(0.01, Math.hypot(s.x, s.y));
      const step = Math.min(magnitude, temperature);
      p.x += (s.x / magnitude) * step;
      p.y += (s.y / magnitude) * step;
      p.x = Math.min(width - 20, Math.max(20, p.x));
      p.y = Math.min(height - 20, Math.max(20, p.y));
    }
  }
  return positions;
}
