import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, dirname } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { loadCsv, numericColumn, MissingColumnError, EmptyCsvError } from "../src/csv.js";
import { buildPanels } from "../src/templates.js";
import { render } from "../src/render.js";

const FIX = join(dirname(fileURLToPath(import.meta.url)), "fixtures");
const tmp = () => mkdtempSync(join(tmpdir(), "render-figs-"));

const sweep1 = join(FIX, "sweep_spin1.csv");
const sweep2 = join(FIX, "sweep_spin2.csv");
const hp = join(FIX, "hp.csv");
const spectrum = join(FIX, "spectrum.csv");
const trajectory = join(FIX, "trajectory.csv");

describe("csv loading", () => {
  it("parses headers and numeric columns", () => {
    const t = loadCsv(sweep1);
    expect(t.columns).toContain("gammaOverG");
    const delta = numericColumn(t, "delta");
    expect(delta.length).toBe(9);
    expect(delta.every((v) => Number.isFinite(v))).toBe(true);
  });

  it("names the missing column", () => {
    const t = loadCsv(sweep1);
    try {
      numericColumn(t, "nope");
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(MissingColumnError);
      expect((err as MissingColumnError).column).toBe("nope");
      expect((err as Error).message).toContain("nope");
    }
  });

  it("rejects empty csv", () => {
    const dir = tmp();
    const p = join(dir, "empty.csv");
    writeFileSync(p, "a,b\n");
    expect(() => loadCsv(p)).toThrow(EmptyCsvError);
  });
});

describe("templates", () => {
  it("fig1 builds one panel with sweep curves and the analytic overlay", () => {
    const panels = buildPanels("fig1", [loadCsv(sweep1), loadCsv(sweep2), loadCsv(hp)]);
    expect(panels.length).toBe(1);
    expect(panels[0].series.length).toBe(3);
    expect(panels[0].series[2].label).toBe("large-S limit");
    expect(panels[0].xScale).toBe("log");
  });

  it("fig2 builds purity and negativity panels", () => {
    const panels = buildPanels("fig2", [loadCsv(sweep1)]);
    expect(panels.map((p) => p.title)).toEqual(["purity", "entanglement negativity"]);
  });

  it("fig4 distinguishes spectra from trajectories", () => {
    const panels = buildPanels("fig4", [loadCsv(spectrum), loadCsv(trajectory)]);
    expect(panels[0].series[0].kind).toBe("scatter");
    expect(panels[1].series.length).toBe(2);
    // trajectory normalized by the initial |szB| = S
    const ys = panels[1].series[1].y;
    expect(Math.abs(ys[0] - 1)).toBeLessThan(1e-12);
  });

  it("hp-overlay builds three analytic panels", () => {
    const panels = buildPanels("hp-overlay", [loadCsv(hp)]);
    expect(panels.length).toBe(3);
  });

  it("complains about the removed column by name", () => {
    const dir = tmp();
    const broken = join(dir, "broken.csv");
    const lines = readFileSync(sweep1, "utf8").trim().split("\n");
    const header = lines[0].split(",");
    const idx = header.indexOf("negativity");
    const strip = (ln: string) =>
      ln
        .split(",")
        .filter((_, j) => j !== idx)
        .join(",");
    writeFileSync(broken, lines.map(strip).join("\n") + "\n");
    try {
      buildPanels("fig2", [loadCsv(broken)]);
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(MissingColumnError);
      expect((err as MissingColumnError).column).toBe("negativity");
    }
  });
});

describe("render", () => {
  it("writes a well-formed svg for each template", () => {
    const dir = tmp();
    const cases: [string, string[]][] = [
      ["fig1", [sweep1, sweep2, hp]],
      ["fig2", [sweep1, hp]],
      ["fig4", [spectrum, trajectory]],
      ["hp-overlay", [hp]],
    ];
    for (const [template, inputs] of cases) {
      const out = join(dir, `${template}.svg`);
      const svg = render({ template: template as never, inputs, out });
      expect(svg.startsWith("<svg ")).toBe(true);
      expect(svg).toContain("</svg>");
      expect(readFileSync(out, "utf8")).toBe(svg);
    }
  });

  it("is deterministic", () => {
    const dir = tmp();
    const a = render({
      template: "fig1",
      inputs: [sweep1, hp],
      out: join(dir, "a.svg"),
    });
    const b = render({
      template: "fig1",
      inputs: [sweep1, hp],
      out: join(dir, "b.svg"),
    });
    expect(a).toBe(b);
  });

  it("rejects non-svg outputs", () => {
    const dir = tmp();
    expect(() =>
      render({ template: "fig1", inputs: [sweep1], out: join(dir, "fig.png") }),
    ).toThrow(/svg/i);
  });
});
