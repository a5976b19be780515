import { writeFileSync } from "node:fs";

import { loadCsv } from "./csv.js";
import { buildPanels, TEMPLATES, type TemplateName } from "./templates.js";
import { renderFigure } from "./svg.js";

export interface FigureSpec {
  template: TemplateName;
  inputs: string[];
  out: string;
}

export function isTemplate(name: string): name is TemplateName {
  return (TEMPLATES as readonly string[]).includes(name);
}

/** Render the figure and write it; returns the SVG text. */
export function render(spec: FigureSpec): string {
  if (!spec.out.endsWith(".svg")) {
    throw new Error(`unsupported image format for ${spec.out}: writes SVG only`);
  }
  if (spec.inputs.length === 0) {
    throw new Error("need at least one input CSV");
  }
  const tables = spec.inputs.map(loadCsv);
  const panels = buildPanels(spec.template, tables);
  const svg = renderFigure(panels);
  writeFileSync(spec.out, svg);
  return svg;
}
