// Wizard state machine. The step chips render in a fixed order and the state
// only advances; every change of table/links comes from a server response,
// never from local computation.

import type {
  IngestResult,
  LinkJson,
  SessionJson,
  StepName,
  TableJson,
  ViolationJson,
} from "./api";

export const STEP_ORDER: StepName[] = [
  "upload",
  "select_region",
  "edit_table",
  "resolve_refs",
  "ingest",
  "done",
];

export const STEP_LABELS: Record<StepName, string> = {
  upload: "Upload",
  select_region: "Select",
  edit_table: "Edit",
  resolve_refs: "Resolve",
  ingest: "Ingest",
  done: "Done",
};

export class StepOrderError extends Error {}

export class WizardState {
  step: StepName = "upload";
  sessionId: string | null = null;
  pageCount = 0;
  currentPage = 0;
  table: TableJson | null = null;
  violations: ViolationJson[] = [];
  links: LinkJson[] = [];
  result: IngestResult | null = null;
  lastError: string | null = null;

  private listeners: (() => void)[] = [];

  subscribe(listener: () => void): void {
    this.listeners.push(listener);
  }

  notify(): void {
    for (const listener of this.listeners) listener();
  }

  stepIndex(step: StepName = this.step): number {
    return STEP_ORDER.indexOf(step);
  }

  /** Mirror of the server's 409 gating: a request whose precondition step is
   * behind or ahead of the session's step must never be issued. */
  assertStep(...allowed: StepName[]): void {
    if (!allowed.includes(this.step)) {
      throw new StepOrderError(
        `action needs step ${allowed.join("/")}, wizard is at ${this.step}`,
      );
    }
  }

  private advance(step: StepName): void {
    if (this.stepIndex(step) > this.stepIndex()) {
      this.step = step;
    }
  }

  applySession(session: SessionJson): void {
    this.sessionId = session.session_id;
    this.pageCount = session.page_count;
    this.advance(session.step);
    if (session.table) this.table = session.table;
    if (session.violations) this.violations = session.violations;
    if (session.links) this.links = session.links;
    this.notify();
  }

  applyTable(table: TableJson, violations: ViolationJson[]): void {
    this.table = table;
    this.violations = violations;
    this.advance("edit_table");
    this.notify();
  }

  applyLinks(links: LinkJson[]): void {
    this.links = links;
    this.advance("resolve_refs");
    this.notify();
  }

  applyResolved(link: LinkJson): void {
    this.links = this.links.map((l) => (l.row === link.row ? link : l));
    this.notify();
  }

  applyIngested(result: IngestResult): void {
    this.result = result;
    this.step = "done";
    this.notify();
  }

  fail(message: string): void {
    this.lastError = message;
    this.notify();
  }

  clearError(): void {
    this.lastError = null;
  }

  get blockingViolations(): ViolationJson[] {
    return this.violations;
  }

  get unresolvedRows(): number[] {
    return this.links.filter((l) => !l.linked).map((l) => l.row);
  }

  /** Next is enabled only when the current step's exit conditions hold. */
  canLeave(step: StepName): boolean {
    switch (step) {
      case "edit_table":
        return this.table !== null && this.blockingViolations.length === 0;
      case "resolve_refs":
        return this.links.length > 0 && this.unresolvedRows.length === 0;
      default:
        return true;
    }
  }
}
