/**
 * Figure templates: a declarative mapping from named CSV columns to panels,
 * so new model kinds need no renderer changes.
 *
 * - fig1: symmetry parameter vs rate ratio (log x); sweep CSVs give one
 *   curve each, analytic-limit CSVs (deltaInfinity column) overlay as the
 *   large-spin curve.
 * - fig2: purity and negativity panels from sweep CSVs, analytic overlays.
 * - fig4: complex spectrum scatter plus trajectory panel (zA/zB over time,
 *   normalized by the initial |zB| when it is nonzero).
 * - hp-overlay: the analytic curves alone.
 */

import { hasColumn, numericColumn, MissingColumnError, type Table } from "./csv.js";
import { PALETTE, type PanelSpec, type Series } from "./svg.js";

export const TEMPLATES = ["fig1", "fig2", "fig4", "hp-overlay"] as const;
export type TemplateName = (typeof TEMPLATES)[number];

function seriesLabel(table: Table): string {
  const row = table.rows[0];
  const kind = row["modelKind"] ?? "";
  if (row["S"]) return `${kind} S=${row["S"]}`;
  if (row["d"]) return `${kind} d=${row["d"]}`;
  return kind || "data";
}

function isAnalytic(table: Table): boolean {
  return hasColumn(table, "deltaInfinity") && !hasColumn(table, "delta");
}

function sweepSeries(
  tables: Table[],
  column: string,
  analyticColumn: string | null,
): Series[] {
  const out: Series[] = [];
  tables.forEach((t, i) => {
    const color = PALETTE[i % PALETTE.length];
    if (isAnalytic(t)) {
      if (analyticColumn === null) return;
      out.push({
        x: numericColumn(t, "gammaOverG"),
        y: numericColumn(t, analyticColumn),
        label: "large-S limit",
        color: "#000000",
        kind: "line",
      });
      return;
    }
    out.push({
      x: numericColumn(t, "gammaOverG"),
      y: numericColumn(t, column),
      label: seriesLabel(t),
      color,
      kind: "line",
    });
  });
  return out;
}

function fig1(tables: Table[]): PanelSpec[] {
  return [
    {
      title: "symmetry parameter",
      xLabel: "Gamma/g",
      yLabel: "Delta",
      xScale: "log",
      series: sweepSeries(tables, "delta", "deltaInfinity"),
    },
  ];
}

function fig2(tables: Table[]): PanelSpec[] {
  return [
    {
      title: "purity",
      xLabel: "Gamma/g",
      yLabel: "P",
      xScale: "log",
      series: sweepSeries(tables, "purity", "purity"),
    },
    {
      title: "entanglement negativity",
      xLabel: "Gamma/g",
      yLabel: "N",
      xScale: "log",
      series: sweepSeries(tables, "negativity", "negativity"),
    },
  ];
}

function fig4(tables: Table[]): PanelSpec[] {
  const panels: PanelSpec[] = [];
  for (const t of tables) {
    if (hasColumn(t, "re") || hasColumn(t, "im")) {
      panels.push({
        title: "Liouvillian spectrum",
        xLabel: "Re lambda",
        yLabel: "Im lambda",
        xScale: "linear",
        series: [
          {
            x: numericColumn(t, "re"),
            y: numericColumn(t, "im"),
            label: "",
            color: PALETTE[0],
            kind: "scatter",
          },
        ],
      });
    } else {
      const time = numericColumn(t, "t");
      const za = numericColumn(t, "szA");
      const zb = numericColumn(t, "szB");
      const norm = Math.abs(zb[0]) > 0 ? Math.abs(zb[0]) : 1;
      panels.push({
        title: "observable dynamics",
        xLabel: "g t",
        yLabel: "<S^z>/S",
        xScale: "linear",
        series: [
          {
            x: time,
            y: za.map((v) => v / norm),
            label: "site A",
            color: PALETTE[0],
            kind: "line",
          },
          {
            x: time,
            y: zb.map((v) => v / norm),
            label: "site B",
            color: PALETTE[1],
            kind: "line",
          },
        ],
      });
    }
  }
  if (panels.length === 0) {
    throw new MissingColumnError("re (spectrum) or t (trajectory)", "fig4 inputs");
  }
  return panels;
}

function hpOverlay(tables: Table[]): PanelSpec[] {
  const curves: [string, string][] = [
    ["purity", "P"],
    ["negativity", "N"],
    ["deltaInfinity", "Delta(S->inf)"],
  ];
  return curves.map(([column, label], i) => ({
    title: label,
    xLabel: "Gamma/g",
    yLabel: label,
    xScale: "log",
    series: tables.map((t) => ({
      x: numericColumn(t, "gammaOverG"),
      y: numericColumn(t, column),
      label: "",
      color: PALETTE[i % PALETTE.length],
      kind: "line" as const,
    })),
  }));
}

export function buildPanels(template: TemplateName, tables: Table[]): PanelSpec[] {
  switch (template) {
    case "fig1":
      return fig1(tables);
    case "fig2":
      return fig2(tables);
    case "fig4":
      return fig4(tables);
    case "hp-overlay":
      return hpOverlay(tables);
  }
}
