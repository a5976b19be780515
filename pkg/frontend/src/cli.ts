#!/usr/bin/env node
/**
 * render_figs <template> --inputs a.csv b.csv ... --out fig.svg
 *
 * Templates: fig1 (symmetry parameter), fig2 (purity/negativity),
 * fig4 (spectrum + dynamics), hp-overlay (analytic curves).
 */

import { isTemplate, render } from "./render.js";
import { TEMPLATES } from "./templates.js";

function usage(): string {
  return `usage: render_figs <${TEMPLATES.join("|")}> --inputs a.csv [b.csv ...] --out fig.svg`;
}

export function main(argv: string[]): number {
  if (argv.length === 0 || argv[0] === "-h" || argv[0] === "--help") {
    console.log(usage());
    return argv.length === 0 ? 1 : 0;
  }
  const template = argv[0];
  if (!isTemplate(template)) {
    console.error(`unknown template "${template}"\n${usage()}`);
    return 1;
  }
  const inputs: string[] = [];
  let out = "";
  let mode: "inputs" | "out" | null = null;
  for (const arg of argv.slice(1)) {
    if (arg === "--inputs") {
      mode = "inputs";
    } else if (arg === "--out") {
      mode = "out";
    } else if (arg.startsWith("--")) {
      console.error(`unknown option ${arg}\n${usage()}`);
      return 1;
    } else if (mode === "inputs") {
      inputs.push(arg);
    } else if (mode === "out") {
      out = arg;
    } else {
      console.error(`unexpected argument ${arg}\n${usage()}`);
      return 1;
    }
  }
  if (inputs.length === 0 || out === "") {
    console.error(usage());
    return 1;
  }
  try {
    render({ template, inputs, out });
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 2;
  }
}

process.exitCode = main(process.argv.slice(2));
