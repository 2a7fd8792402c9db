/** Thin SVG painters for the pure mark data computed elsewhere. */

import { BarMark } from "./barcode.js";
import { LayoutGraph } from "./layout.js";
import { categoricalColor } from "./colormap.js";
import { TimelineMarks } from "./timeline.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el<K extends string>(name: K, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  return node;
}

function scale(domain: [number, number], range: [number, number]) {
  const span = domain[1] - domain[0] || 1;
  return (v: number) => range[0] + ((v - domain[0]) / span) * (range[1] - range[0]);
}

export function renderTimeline(
  svg: SVGSVGElement,
  marks: TimelineMarks,
  onSelect: (id: number) => void,
): void {
  svg.replaceChildren();
  const width = svg.clientWidth || 900;
  const height = svg.clientHeight || 260;
  const pad = 30;
  const rowH = (height - 2 * pad) / marks.rowCount;
  const sx = scale(marks.xDomain, [pad, width - pad]);

  for (let r = 0; r < marks.rowCount; r++) {
    const top = pad + r * rowH;
    const sy = scale(marks.yDomain, [top + rowH - 6, top + 6]);
    svg.appendChild(
      el("line", {
        x1: pad, x2: width - pad, y1: top + rowH, y2: top + rowH,
        stroke: "#ccc", "stroke-width": 1,
      }),
    );
    if (marks.polylines.length > 0 && r === 0) {
      const px = scale([0, Math.max(marks.polylines[0].points.length - 1, 1)], [pad, width - pad]);
      for (const line of marks.polylines) {
        const d = line.points
          .map((p, i) => `${i === 0 ? "M" : "L"}${px(p.x)},${sy(p.y)}`)
          .join(" ");
        svg.appendChild(
          el("path", { d, fill: "none", stroke: line.color, "stroke-width": 1.5, opacity: 0.8 }),
        );
      }
    }
    for (const p of marks.points) {
      if ((p.row ?? 0) !== r) continue;
      const c = el("circle", {
        cx: sx(p.x), cy: sy(p.y), r: p.selected ? 6 : 4,
        fill: p.color, stroke: p.selected ? "#000" : "none", "stroke-width": 1.5,
        cursor: "pointer",
      });
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = p.tooltip;
      c.appendChild(title);
      c.addEventListener("click", () => onSelect(p.instanceId));
      svg.appendChild(c);
    }
  }
}

export function renderLegend(container: HTMLElement, marks: TimelineMarks): void {
  container.replaceChildren();
  for (const entry of marks.legend) {
    const item = document.createElement("span");
    item.className = "legend-entry";
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.background = entry.color;
    item.append(swatch, entry.label);
    container.appendChild(item);
  }
}

export function renderNodeLink(svg: SVGSVGElement, graph: LayoutGraph): void {
  svg.replaceChildren();
  const width = svg.clientWidth || 360;
  const height = svg.clientHeight || 300;
  const xs = graph.nodes.map((n) => n.x);
  const ys = graph.nodes.map((n) => n.y);
  const sx = scale([Math.min(...xs, -1), Math.max(...xs, 1)], [20, width - 20]);
  const sy = scale([Math.min(...ys, -1), Math.max(...ys, 1)], [20, height - 20]);

  const categories = [...new Set(graph.nodes.map((n) => n.category).filter(Boolean))].sort();
  const colorOf = (n: { category?: string }) =>
    n.category ? categoricalColor(categories.indexOf(n.category)) : "#4269d0";

  for (const e of graph.edges) {
    const a = graph.nodes[e.source];
    const b = graph.nodes[e.target];
    svg.appendChild(
      el("line", {
        x1: sx(a.x), y1: sy(a.y), x2: sx(b.x), y2: sy(b.y),
        stroke: "#999", "stroke-width": Math.min(1 + Math.log1p(e.weight), 4), opacity: 0.7,
      }),
    );
  }
  for (const n of graph.nodes) {
    const c = el("circle", { cx: sx(n.x), cy: sy(n.y), r: 6, fill: colorOf(n) });
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = n.category ? `${n.id} (${n.category})` : n.id;
    c.appendChild(title);
    svg.appendChild(c);
  }
}

export function renderBarcode(svg: SVGSVGElement, bars: BarMark[], rMax: number): void {
  svg.replaceChildren();
  const width = svg.clientWidth || 360;
  const rowH = 10;
  const pad = 20;
  svg.setAttribute("height", String(bars.length * rowH + 2 * pad));
  const sx = scale([0, rMax || 1], [pad, width - pad]);
  bars.forEach((bar, i) => {
    const y = pad + i * rowH + rowH / 2;
    const color = bar.dim === 0 ? "#4269d0" : "#ff725c";
    svg.appendChild(
      el("line", {
        x1: sx(bar.start), x2: sx(bar.end), y1: y, y2: y,
        stroke: color, "stroke-width": 5,
        "stroke-dasharray": bar.open ? "6 3" : "none",
        class: "bar",
      }),
    );
    if (bar.open) {
      svg.appendChild(
        el("path", {
          d: `M${sx(bar.end)},${y - 4} l6,4 l-6,4`,
          fill: "none", stroke: color, "stroke-width": 1.5,
        }),
      );
    }
  });
}
