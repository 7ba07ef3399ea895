// Actions: every mutation round-trips through the API and the local state is
// updated only from the server's response. The step guard here mirrors the
// server's 409 rules so an out-of-order request is never issued at all.

import { ApiClient, ApiError } from "./api";
import type { ExtractMode, GridJson, PageJson, RegionJson } from "./api";
import { WizardState } from "./state";

export class WizardController {
  /** Set when lattice extraction failed for lack of rulings; the UI offers
   * the whitespace method instead. */
  modeHint: ExtractMode | null = null;

  constructor(
    readonly api: ApiClient,
    readonly state: WizardState,
  ) {}

  async upload(file: Blob, filename?: string): Promise<void> {
    this.state.assertStep("upload");
    const session = await this.api.createSession(file, filename);
    this.state.applySession(session);
  }

  async loadPage(page: number): Promise<PageJson> {
    const id = this.requireSession();
    return this.api.getPage(id, page);
  }

  async extract(region: RegionJson, mode: ExtractMode): Promise<GridJson | null> {
    this.state.assertStep("select_region", "edit_table");
    const id = this.requireSession();
    this.modeHint = null;
    try {
      const grid = await this.api.extract(id, region, mode);
      this.state.clearError();
      this.state.applyTable(grid.table, grid.violations);
      return grid;
    } catch (error) {
      if (error instanceof ApiError && error.code === "InsufficientRulings") {
        this.modeHint = "stream";
        this.state.fail(`${error.detail} — try the Stream method`);
        return null;
      }
      throw error;
    }
  }

  async edit(edits: string[]): Promise<void> {
    this.state.assertStep("edit_table");
    const id = this.requireSession();
    try {
      const result = await this.api.editTable(id, edits);
      this.state.clearError();
      this.state.applyTable(result.table, result.violations);
    } catch (error) {
      if (error instanceof ApiError) {
        this.state.fail(error.detail);
        return;
      }
      throw error;
    }
  }

  async link(): Promise<void> {
    this.state.assertStep("edit_table", "resolve_refs");
    const id = this.requireSession();
    const result = await this.api.linkRefs(id);
    this.state.applyLinks(result.links);
  }

  async resolve(row: number, citationText: string): Promise<void> {
    this.state.assertStep("resolve_refs");
    const id = this.requireSession();
    try {
      const link = await this.api.resolveRef(id, row, citationText);
      this.state.clearError();
      this.state.applyResolved(link);
    } catch (error) {
      if (error instanceof ApiError) {
        this.state.fail(error.detail);
        return;
      }
      throw error;
    }
  }

  async ingest(title: string, sourceReference: string): Promise<void> {
    this.state.assertStep("resolve_refs");
    const id = this.requireSession();
    try {
      const result = await this.api.ingest(id, title, sourceReference);
      this.state.clearError();
      this.state.applyIngested(result);
    } catch (error) {
      if (error instanceof ApiError) {
        this.state.fail(error.detail);
        return;
      }
      throw error;
    }
  }

  private requireSession(): string {
    const id = this.state.sessionId;
    if (!id) throw new Error("no session yet");
    return id;
  }
}
