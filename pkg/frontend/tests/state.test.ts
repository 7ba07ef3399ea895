import { describe, expect, it } from "vitest";

import { STEP_ORDER, StepOrderError, WizardState } from "../src/state";

describe("WizardState", () => {
  it("step chips order is fixed", () => {
    expect(STEP_ORDER).toEqual([
      "upload", "select_region", "edit_table", "resolve_refs", "ingest", "done",
    ]);
  });

  it("steps only advance, never regress", () => {
    const state = new WizardState();
    state.applySession({ session_id: "s", step: "edit_table", page_count: 1 });
    expect(state.step).toBe("edit_table");
    state.applySession({ session_id: "s", step: "select_region", page_count: 1 });
    expect(state.step).toBe("edit_table");
  });

  it("assertStep mirrors server gating", () => {
    const state = new WizardState();
    expect(() => state.assertStep("resolve_refs")).toThrow(StepOrderError);
    state.applySession({ session_id: "s", step: "select_region", page_count: 1 });
    expect(() => state.assertStep("select_region", "edit_table")).not.toThrow();
  });

  it("cannot leave the edit step while violations exist", () => {
    const state = new WizardState();
    state.applySession({ session_id: "s", step: "edit_table", page_count: 1 });
    state.applyTable(
      { columns: [{ label: "A", kind: "literal", role: "data" }], rows: [], legend: {} },
      [{ rule: 3, row: null, col: null, message: "no reference column" }],
    );
    expect(state.canLeave("edit_table")).toBe(false);
    state.applyTable(
      { columns: [{ label: "Reference", kind: "literal", role: "reference" }],
        rows: [], legend: {} },
      [],
    );
    expect(state.canLeave("edit_table")).toBe(true);
  });

  it("cannot leave resolve step with unresolved rows", () => {
    const state = new WizardState();
    state.applySession({ session_id: "s", step: "resolve_refs", page_count: 1 });
    state.applyLinks([
      { row: 0, key: "[1]", linked: true },
      { row: 1, key: "??", linked: false },
    ]);
    expect(state.unresolvedRows).toEqual([1]);
    expect(state.canLeave("resolve_refs")).toBe(false);
    state.applyResolved({ row: 1, key: "??", linked: true });
    expect(state.canLeave("resolve_refs")).toBe(true);
  });

  it("notifies subscribers on every change", () => {
    const state = new WizardState();
    let renders = 0;
    state.subscribe(() => renders++);
    state.applySession({ session_id: "s", step: "select_region", page_count: 1 });
    state.applyLinks([]);
    expect(renders).toBe(2);
  });
});
