// @vitest-environment node
//
// End-to-end against the real backend: spawn the Python service, generate a
// fixture article, and run the same action sequence the wizard performs
// (upload, extract, link, ingest). Skipped when python3 is unavailable.

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { WizardController } from "../src/controller";
import { WizardState } from "../src/state";

const REPO = resolve(import.meta.dirname, "../..");
const PORT = 8917;

const GENERATE = `
import json, pathlib, sys
sys.path.insert(0, sys.argv[1])
import pdfgen
base = pathlib.Path(sys.argv[2])
manifest = pdfgen.make_survey_article(base / "survey.pdf")
(base / "records.tsv").write_text("\\n".join(
    f"{r['doi']}\\t{r['title']}\\t{r['authors']}\\t{r['year']}\\t{r['month']}"
    for r in manifest.records), encoding="utf-8")
r = manifest.parts[0].region
print(json.dumps({"page": r.page_index, "x0": r.x0, "y0": r.y0,
                  "x1": r.x1, "y1": r.y1}))
`;

function havePython(): boolean {
  try {
    execFileSync("python3", ["--version"], { stdio: "ignore" });
    return true;
  } catch {
    return false;
  }
}

describe.skipIf(!havePython())("live service walkthrough", () => {
  let proc: ChildProcess | undefined;
  let workdir: string;
  let region: { page: number; x0: number; y0: number; x1: number; y1: number };

  beforeAll(async () => {
    workdir = mkdtempSync(join(tmpdir(), "sg-live-"));
    const script = join(workdir, "generate.py");
    writeFileSync(script, GENERATE);
    region = JSON.parse(execFileSync(
      "python3", [script, join(REPO, "tests"), workdir],
      { encoding: "utf-8" },
    ).trim());

    proc = spawn("python3", ["-m", "surveygraph.service", "--port", String(PORT)], {
      env: {
        ...process.env,
        SURVEYGRAPH_STORE: join(workdir, "store.log"),
        SURVEYGRAPH_METADATA_RECORDS: join(workdir, "records.tsv"),
      },
      stdio: "ignore",
    });
    for (let attempt = 0; attempt < 120; attempt++) {
      try {
        const probe = await fetch(`http://127.0.0.1:${PORT}/docs`);
        if (probe.ok) return;
      } catch {
        // not up yet
      }
      await new Promise((r) => setTimeout(r, 250));
    }
    throw new Error("service did not come up");
  }, 60000);

  afterAll(() => {
    proc?.kill();
  });

  it("imports the ten-row fixture through the real API", async () => {
    const state = new WizardState();
    const controller = new WizardController(
      new ApiClient(`http://127.0.0.1:${PORT}/api/v1`), state);

    const bytes = readFileSync(join(workdir, "survey.pdf"));
    await controller.upload(new Blob([bytes], { type: "application/pdf" }),
                            "survey.pdf");
    expect(state.step).toBe("select_region");
    expect(state.pageCount).toBe(2);

    const page = await controller.loadPage(0);
    expect(page.glyphs.length).toBeGreaterThan(100);
    expect(page.rulings.length).toBeGreaterThan(10);

    const grid = await controller.extract(region, "lattice");
    expect(grid).not.toBeNull();
    expect(grid!.n_rows).toBe(11);
    expect(state.step).toBe("edit_table");
    expect(state.violations).toEqual([]);

    await controller.link();
    expect(state.step).toBe("resolve_refs");
    expect(state.unresolvedRows).toEqual([]);
    expect(state.links).toHaveLength(10);
    expect(state.links[0]!.entry?.doi).toBe("10.5555/sg.001");
    expect(state.links[0]!.entry?.year).toBe(2010);

    await controller.ingest("Sequence model survey", "Tiny et al. 2026");
    expect(state.step).toBe("done");
    expect(state.result!.comparison_id).toBe("R0");
    expect(new Set(state.result!.paper_ids).size).toBe(10);
  }, 60000);

  it("server rejects out-of-order calls with 409 (mirrored client-side)", async () => {
    const api = new ApiClient(`http://127.0.0.1:${PORT}/api/v1`);
    const bytes = readFileSync(join(workdir, "survey.pdf"));
    const session = await api.createSession(new Blob([bytes]), "survey.pdf");
    const error = await api
      .resolveRef(session.session_id, 0, "X (2020)")
      .catch((e) => e);
    expect(error.status).toBe(409);
    expect(error.code).toBe("step_order");
  }, 60000);
});
