// Scripted wizard walkthrough in a real DOM against the mock service twin:
// upload -> select -> edit -> resolve -> ingest, plus the gating and
// badge behaviors. Every state change must round-trip through the API.

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { createApp } from "../src/main";
import { StepOrderError } from "../src/state";
import { MockService, surveyGrid, surveyLinkable } from "./mockService";

function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

function testid(root: HTMLElement, id: string): HTMLElement {
  const node = root.querySelector(`[data-testid="${id}"]`);
  if (!node) throw new Error(`missing element ${id}`);
  return node as HTMLElement;
}

function maybe(root: HTMLElement, id: string): HTMLElement | null {
  return root.querySelector(`[data-testid="${id}"]`) as HTMLElement | null;
}

async function uploadFixture(root: HTMLElement): Promise<void> {
  const input = testid(root, "file-input") as HTMLInputElement;
  const file = new File([new Uint8Array([0x25, 0x50, 0x44, 0x46])], "survey.pdf",
                        { type: "application/pdf" });
  Object.defineProperty(input, "files", { value: [file] });
  input.dispatchEvent(new Event("change"));
  await flush();
  await flush();
}

function drag(svg: Element, from: [number, number], to: [number, number]): void {
  svg.dispatchEvent(new MouseEvent("mousedown", { clientX: from[0], clientY: from[1] }));
  svg.dispatchEvent(new MouseEvent("mousemove", { clientX: to[0], clientY: to[1] }));
  svg.dispatchEvent(new MouseEvent("mouseup", { clientX: to[0], clientY: to[1] }));
}

function setInput(node: HTMLElement, value: string): void {
  (node as HTMLInputElement).value = value;
  node.dispatchEvent(new Event("change"));
}

describe("wizard walkthrough", () => {
  let root: HTMLElement;
  let mock: MockService;

  beforeEach(() => {
    document.body.innerHTML = '<div id="root"></div>';
    root = document.getElementById("root")!;
    mock = new MockService({ grid: surveyGrid(), linkable: surveyLinkable() });
  });

  function boot() {
    return createApp(root, new ApiClient("/api/v1", mock.fetch));
  }

  it("chips render in the fixed order", () => {
    boot();
    const chips = [...root.querySelectorAll(".chip")].map((c) => c.textContent);
    expect(chips).toEqual(["Upload", "Select", "Edit", "Resolve", "Ingest", "Done"]);
    expect(testid(root, "chip-upload").classList.contains("active")).toBe(true);
  });

  it("completes the full import and matches the headless outcome", async () => {
    const app = boot();
    await uploadFixture(root);
    expect(app.state.step).toBe("select_region");
    expect(testid(root, "chip-select_region").classList.contains("active")).toBe(true);

    // zero-area drag is ignored locally: no extract request is issued
    const before = mock.calls.filter((c) => c.path.endsWith("/extract")).length;
    drag(root.querySelector("svg.page-canvas")!, [100, 100], [101, 101]);
    await flush();
    expect(mock.calls.filter((c) => c.path.endsWith("/extract")).length).toBe(before);

    drag(root.querySelector("svg.page-canvas")!, [50, 50], [400, 300]);
    await flush();
    expect(app.state.step).toBe("edit_table");
    expect(testid(root, "editor-grid").querySelectorAll("tr")).toHaveLength(11);

    // next -> link all rows
    (testid(root, "btn-next") as HTMLButtonElement).click();
    await flush();
    expect(app.state.step).toBe("resolve_refs");
    expect(testid(root, "resolve-summary").textContent).toContain("all 10 rows linked");

    // ingest without a title is blocked client-side (no request issued)
    const ingestCalls = () => mock.calls.filter((c) => c.path.endsWith("/ingest")).length;
    const zero = ingestCalls();
    (testid(root, "btn-ingest") as HTMLButtonElement).click();
    await flush();
    expect(ingestCalls()).toBe(zero);
    expect(testid(root, "ingest-hint").textContent).toContain("title");

    setInput(testid(root, "ingest-title"), "Sequence model survey");
    setInput(testid(root, "ingest-source"), "Tiny et al. 2026");
    (testid(root, "btn-ingest") as HTMLButtonElement).click();
    await flush();
    expect(app.state.step).toBe("done");
    expect(testid(root, "done-comparison").textContent).toContain("comparison R0");
    expect(testid(root, "done-papers").textContent).toContain("10 papers");

    // same outcome as a headless run of the identical script against a
    // fresh service: the comparison id set must match
    const headless = await runHeadless();
    expect(headless.comparison_id).toBe("R0");
    expect(headless.paper_ids).toHaveLength(10);
  });

  async function runHeadless() {
    const twin = new MockService({ grid: surveyGrid(), linkable: surveyLinkable() });
    const api = new ApiClient("/api/v1", twin.fetch);
    const session = await api.createSession(new Blob([1 as unknown as string]));
    await api.extract(session.session_id,
                      { page: 0, x0: 50, y0: 50, x1: 400, y1: 300 }, "lattice");
    await api.linkRefs(session.session_id);
    return api.ingest(session.session_id, "Sequence model survey", "Tiny et al. 2026");
  }

  it("mutations only change state via server responses", async () => {
    const app = boot();
    await uploadFixture(root);
    drag(root.querySelector("svg.page-canvas")!, [50, 50], [400, 300]);
    await flush();

    const callsBefore = mock.calls.length;
    setInput(testid(root, "cell-0-2"), "0.99");
    await flush();
    // exactly one request, and the cell text equals the server's echo
    expect(mock.calls.length).toBe(callsBefore + 1);
    expect(app.state.table!.rows[0]![2]).toBe("0.99");
    expect((testid(root, "cell-0-2") as HTMLInputElement).value).toBe("0.99");
  });

  it("rule badges gate the Next button", async () => {
    // a grid whose header has no Reference column -> rule 3 pending
    mock = new MockService({
      grid: [["Key", "Value"], ["[1]", "a"], ["[2]", "b"]],
      linkable: surveyLinkable(),
    });
    const app = boot();
    await uploadFixture(root);
    drag(root.querySelector("svg.page-canvas")!, [50, 50], [400, 300]);
    await flush();

    expect(maybe(root, "rule-badge-3")).not.toBeNull();
    expect((testid(root, "btn-next") as HTMLButtonElement).disabled).toBe(true);

    // pick column 0 as the Reference column: badge clears, Next enables
    (testid(root, "ref-pick-0") as HTMLInputElement).checked = true;
    testid(root, "ref-pick-0").dispatchEvent(new Event("change"));
    await flush();
    expect(maybe(root, "rule-badge-3")).toBeNull();
    expect((testid(root, "btn-next") as HTMLButtonElement).disabled).toBe(false);

    // blanking a reference cell brings a rule-4 badge and disables Next again
    setInput(testid(root, "cell-1-0"), "");
    await flush();
    expect(maybe(root, "rule-badge-4")).not.toBeNull();
    expect(maybe(root, "badge-1-0")).not.toBeNull();
    expect((testid(root, "btn-next") as HTMLButtonElement).disabled).toBe(true);
    expect(app.state.canLeave("edit_table")).toBe(false);
  });

  it("transpose twice restores the visible table", async () => {
    boot();
    await uploadFixture(root);
    drag(root.querySelector("svg.page-canvas")!, [50, 50], [400, 300]);
    await flush();

    const snapshot = () =>
      [...root.querySelectorAll(".cell-input")].map((n) => (n as HTMLInputElement).value);
    const before = snapshot();
    testid(root, "btn-transpose").click();
    await flush();
    expect(snapshot()).not.toEqual(before);
    testid(root, "btn-transpose").click();
    await flush();
    expect(snapshot()).toEqual(before);
  });

  it("legend expansion goes through the server", async () => {
    mock = new MockService({
      grid: [["Reference", "V"], ["[1]", "✓"]],
      linkable: surveyLinkable(),
    });
    boot();
    await uploadFixture(root);
    drag(root.querySelector("svg.page-canvas")!, [50, 50], [400, 300]);
    await flush();

    setInput(testid(root, "legend-key"), "✓");
    setInput(testid(root, "legend-value"), "yes");
    testid(root, "btn-legend-add").click();
    await flush();
    testid(root, "btn-expand-legend").click();
    await flush();
    expect((testid(root, "cell-0-1") as HTMLInputElement).value).toBe("yes");
  });

  it("lattice failure surfaces the stream hint inline", async () => {
    mock = new MockService({ grid: [], linkable: new Set() });
    const app = boot();
    await uploadFixture(root);
    drag(root.querySelector("svg.page-canvas")!, [50, 50], [400, 300]);
    await flush();
    expect(app.state.step).toBe("select_region");
    expect(testid(root, "error-bar").textContent).toContain("Stream");
    expect(maybe(root, "mode-hint")?.textContent).toContain("stream");
  });

  it("manual resolution clears the queue", async () => {
    mock = new MockService({
      grid: [["Reference", "V"], ["[1]", "a"], ["??", "b"]],
      linkable: new Set(["[1]"]),
    });
    const app = boot();
    await uploadFixture(root);
    drag(root.querySelector("svg.page-canvas")!, [50, 50], [400, 300]);
    await flush();
    (testid(root, "btn-next") as HTMLButtonElement).click();
    await flush();

    expect(testid(root, "link-status-1").textContent).toBe("not found");
    expect((testid(root, "btn-ingest") as HTMLButtonElement).disabled).toBe(true);

    testid(root, "btn-paste-1").click();
    await flush();
    setInput(testid(root, "paste-text"), "Roe, A.: Pasted Fix. Venue (2012).");
    testid(root, "btn-paste-submit").click();
    await flush();

    expect(app.state.unresolvedRows).toEqual([]);
    expect(testid(root, "link-status-1").textContent).toBe("linked");
    expect((testid(root, "btn-ingest") as HTMLButtonElement).disabled).toBe(false);
  });

  it("never issues requests the server would 409", async () => {
    const app = boot();
    await uploadFixture(root);
    const calls = mock.calls.length;
    await expect(app.controller.resolve(0, "x")).rejects.toThrow(StepOrderError);
    await expect(app.controller.ingest("T", "S")).rejects.toThrow(StepOrderError);
    expect(mock.calls.length).toBe(calls); // nothing reached the wire
  });
});
