// Thin DOM layer: paints scenes and table models, wires row/node clicks.

import type { NetworkScene, TableModel } from "./scene.js";
import { toDelimited } from "./scene.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export function clear(element: Element): void {
  while (element.firstChild) element.removeChild(element.firstChild);
}

export function renderScene(container: Element, scene: NetworkScene,
                            onNodeClick?: (id: string) => void): SVGSVGElement {
  clear(container);
  const doc = container.ownerDocument!;
  const svg = doc.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  svg.setAttribute("viewBox", "0 0 840 560");
  svg.setAttribute("class", "network");

  for (const edge of scene.edges) {
    const line = doc.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", edge.x1.toFixed(1));
    line.setAttribute("y1", edge.y1.toFixed(1));
    line.setAttribute("x2", edge.x2.toFixed(1));
    line.setAttribute("y2", edge.y2.toFixed(1));
    line.setAttribute("stroke", edge.color);
    line.setAttribute("stroke-width", String(edge.width));
    line.setAttribute("data-weight", String(edge.weight));
    line.setAttribute("class", "edge");
    svg.appendChild(line);
  }

  for (const node of scene.nodes) {
    const group = doc.createElementNS(SVG_NS, "g");
    group.setAttribute("class", `node ${node.shape}`);
    group.setAttribute("data-id", node.id);
    let marker: Element;
    if (node.shape === "circle") {
      marker = doc.createElementNS(SVG_NS, "circle");
      marker.setAttribute("cx", node.x.toFixed(1));
      marker.setAttribute("cy", node.y.toFixed(1));
      marker.setAttribute("r", "9");
    } else {
      marker = doc.createElementNS(SVG_NS, "rect");
      marker.setAttribute("x", (node.x - 8).toFixed(1));
      marker.setAttribute("y", (node.y - 8).toFixed(1));
      marker.setAttribute("width", "16");
      marker.setAttribute("height", "16");
    }
    marker.setAttribute("fill", node.color);
    group.appendChild(marker);
    const text = doc.createElementNS(SVG_NS, "text");
    text.setAttribute("x", (node.x + 11).toFixed(1));
    text.setAttribute("y", (node.y + 4).toFixed(1));
    text.textContent = node.label;
    group.appendChild(text);
    if (onNodeClick) {
      group.addEventListener("click", () => onNodeClick(node.id));
    }
    svg.appendChild(group);
  }

  const caption = doc.createElement("p");
  caption.setAttribute("class", "caption");
  caption.textContent =
    `${scene.nodeCount} nodes, ${scene.edgeCount} edges`;
  container.appendChild(svg);
  container.appendChild(caption);
  return svg;
}

export interface TableOptions {
  onSort?: (column: number) => void;
  onExport?: (text: string) => void;
  onRowClick?: (row: (string | number)[]) => void;
}

export function renderTable(container: Element, model: TableModel,
                            options: TableOptions = {}): HTMLTableElement {
  clear(container);
  const doc = container.ownerDocument!;
  const table = doc.createElement("table");
  table.setAttribute("class", "data");
  const head = doc.createElement("thead");
  const headRow = doc.createElement("tr");
  model.columns.forEach((column, index) => {
    const th = doc.createElement("th");
    th.textContent = column;
    if (options.onSort) {
      th.addEventListener("click", () => options.onSort!(index));
    }
    headRow.appendChild(th);
  });
  head.appendChild(headRow);
  table.appendChild(head);

  const body = doc.createElement("tbody");
  for (const row of model.rows) {
    const tr = doc.createElement("tr");
    for (const cell of row) {
      const td = doc.createElement("td");
      td.textContent = typeof cell === "number" ? String(cell) : cell;
      if (typeof cell === "number") td.setAttribute("class", "numeric");
      tr.appendChild(td);
    }
    if (options.onRowClick) {
      tr.addEventListener("click", () => options.onRowClick!(row));
    }
    body.appendChild(tr);
  }
  table.appendChild(body);
  container.appendChild(table);

  if (options.onExport) {
    const button = doc.createElement("button");
    button.textContent = "Export TSV";
    button.setAttribute("class", "export");
    button.addEventListener("click", () => options.onExport!(
      toDelimited(model)));
    container.appendChild(button);
  }
  return table;
}

export function showError(banner: Element, message: string): void {
  banner.textContent = message;
  banner.setAttribute("class", "error visible");
}

export function hideError(banner: Element): void {
  banner.textContent = "";
  banner.setAttribute("class", "error");
}
