// Typed client for the import-session API (/api/v1). All wizard mutations go
// through here; the UI never extracts or parses anything locally.

export type StepName =
  | "upload"
  | "select_region"
  | "edit_table"
  | "resolve_refs"
  | "ingest"
  | "done";

export type ColumnKind = "literal" | "resource";
export type ColumnRole = "reference" | "data" | "metadata";

export interface ColumnJson {
  label: string;
  kind: ColumnKind;
  role: ColumnRole;
}

export interface TableJson {
  columns: ColumnJson[];
  rows: string[][];
  legend: Record<string, string>;
}

export interface ViolationJson {
  rule: number;
  row: number | null;
  col: number | null;
  message: string;
}

export interface EntryJson {
  title: string | null;
  authors: string[];
  year: number | null;
  month: number | null;
  doi: string | null;
}

export interface LinkJson {
  row: number;
  key: string;
  linked: boolean;
  entry?: EntryJson;
}

export interface SessionJson {
  session_id: string;
  step: StepName;
  page_count: number;
  table?: TableJson;
  violations?: ViolationJson[];
  links?: LinkJson[];
}

export interface GlyphJson {
  text: string;
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export interface RulingJson {
  orientation: "H" | "V";
  position: number;
  start: number;
  end: number;
}

export interface PageJson {
  index: number;
  width: number;
  height: number;
  glyphs: GlyphJson[];
  rulings: RulingJson[];
}

export interface RegionJson {
  page: number;
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export type ExtractMode = "lattice" | "stream";

export interface GridJson {
  n_rows: number;
  n_cols: number;
  cells: string[][];
  issues: { kind: string; row: number | null; col: number | null; note: string }[];
  table: TableJson;
  violations: ViolationJson[];
}

export interface TableEditResult {
  table: TableJson;
  violations: ViolationJson[];
}

export interface IngestResult {
  comparison_id: string;
  paper_ids: string[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "/api/v1",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body instanceof FormData) {
      init.body = body;
    } else if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { "Content-Type": "application/json" };
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new ApiError(
        response.status,
        String(payload.error ?? "unknown_error"),
        String(payload.detail ?? response.statusText),
      );
    }
    return payload as T;
  }

  async createSession(file: Blob, filename = "upload.pdf"): Promise<SessionJson> {
    const form = new FormData();
    form.append("file", file, filename);
    return this.request<SessionJson>("POST", "/sessions", form);
  }

  getSession(id: string): Promise<SessionJson> {
    return this.request("GET", `/sessions/${id}`);
  }

  getPage(id: string, page: number): Promise<PageJson> {
    return this.request("GET", `/sessions/${id}/pages/${page}`);
  }

  extract(id: string, region: RegionJson, mode: ExtractMode): Promise<GridJson> {
    return this.request("POST", `/sessions/${id}/extract`, { region, mode });
  }

  editTable(id: string, edits: string[]): Promise<TableEditResult> {
    return this.request("PUT", `/sessions/${id}/table`, { edits });
  }

  linkRefs(id: string): Promise<{ links: LinkJson[] }> {
    return this.request("POST", `/sessions/${id}/refs/link`);
  }

  resolveRef(id: string, row: number, citationText: string): Promise<LinkJson> {
    return this.request("POST", `/sessions/${id}/refs/resolve`, {
      row,
      citation_text: citationText,
    });
  }

  ingest(id: string, title: string, sourceReference: string): Promise<IngestResult> {
    return this.request("POST", `/sessions/${id}/ingest`, {
      title,
      source_reference: sourceReference,
    });
  }
}

// Shell-style quoting for edit-script arguments (the server splits commands
// with POSIX rules).
export function quoteArg(value: string): string {
  if (value !== "" && /^[A-Za-z0-9_.[\]-]+$/.test(value)) {
    return value;
  }
  return `"${value.replace(/\\/g, "\\\\").replace(/"/g, '\\"')}"`;
}
