// In-memory twin of the import-session API for DOM tests: same endpoint
// shapes, same step gating (409), same validation statuses (422) as the
// Python service asserts in its own test suite.

import type {
  ColumnJson,
  LinkJson,
  SessionJson,
  StepName,
  TableJson,
  ViolationJson,
} from "../src/api";

export interface MockOptions {
  /** cell matrix produced by "extracting" any region (row 0 = header) */
  grid: string[][];
  /** keys (reference-cell text) that link automatically */
  linkable: Set<string>;
  pageCount?: number;
}

interface MockSession {
  id: string;
  step: StepName;
  table: TableJson | null;
  links: LinkJson[];
}

const STEPS: StepName[] = ["upload", "select_region", "edit_table",
                           "resolve_refs", "ingest", "done"];

function stepIndex(step: StepName): number {
  return STEPS.indexOf(step);
}

function buildTable(matrix: string[][]): TableJson {
  const header = matrix[0] ?? [];
  const columns: ColumnJson[] = header.map((raw) => {
    const resource = raw.startsWith("[R]");
    const label = resource ? raw.slice(3).trim() : raw.trim();
    return {
      label,
      kind: resource ? "resource" : "literal",
      role: label.toLowerCase() === "reference" ? "reference" : "data",
    };
  });
  return { columns, rows: matrix.slice(1).map((r) => [...r]), legend: {} };
}

function validate(table: TableJson): ViolationJson[] {
  const violations: ViolationJson[] = [];
  const refCols = table.columns
    .map((c, i) => (c.role === "reference" ? i : -1))
    .filter((i) => i >= 0);
  if (refCols.length !== 1) {
    violations.push({ rule: 3, row: null, col: null,
                      message: `${refCols.length} reference columns` });
  } else {
    const ref = refCols[0]!;
    table.rows.forEach((row, r) => {
      if (!(row[ref] ?? "").trim()) {
        violations.push({ rule: 4, row: r, col: ref, message: "empty reference cell" });
      }
    });
  }
  for (const [key] of Object.entries(table.legend)) {
    table.rows.forEach((row, r) => {
      row.forEach((cell, c) => {
        if (cell === key) {
          violations.push({ rule: 6, row: r, col: c,
                            message: `unexpanded abbreviation ${key}` });
        }
      });
    });
  }
  return violations;
}

function applyEdit(table: TableJson, command: string): TableJson {
  const parts = command.match(/(?:[^\s"]+|"(?:[^"\\]|\\.)*")+/g) ?? [];
  const args = parts.map((p) =>
    p.startsWith('"') ? p.slice(1, -1).replace(/\\(.)/g, "$1") : p);
  const op = args[0];
  const next: TableJson = {
    columns: table.columns.map((c) => ({ ...c })),
    rows: table.rows.map((r) => [...r]),
    legend: { ...table.legend },
  };
  if (op === "set_cell") {
    next.rows[Number(args[1])]![Number(args[2])] = args[3] ?? "";
  } else if (op === "set_reference_column") {
    const target = Number(args[1]);
    next.columns.forEach((c, i) => {
      if (i === target) c.role = "reference";
      else if (c.role === "reference") c.role = "data";
    });
  } else if (op === "rename_column") {
    next.columns[Number(args[1])]!.label = args[2] ?? "";
  } else if (op === "set_kind") {
    next.columns[Number(args[1])]!.kind = args[2] === "resource" ? "resource" : "literal";
  } else if (op === "transpose") {
    const matrix = [next.columns.map((c) =>
      c.kind === "resource" ? `[R] ${c.label}` : c.label)]
      .concat(next.rows.map((r) => [...r]));
    const flipped = matrix[0]!.map((_, i) => matrix.map((row) => row[i]!));
    const rebuilt = buildTable(flipped);
    rebuilt.legend = next.legend;
    return rebuilt;
  } else if (op === "drop_row") {
    next.rows.splice(Number(args[1]), 1);
  } else if (op === "drop_column") {
    const c = Number(args[1]);
    next.columns.splice(c, 1);
    next.rows.forEach((r) => r.splice(c, 1));
  } else if (op === "legend") {
    const [key, ...rest] = (args[1] ?? "").split("=");
    next.legend[key ?? ""] = rest.join("=");
  } else if (op === "expand_legend") {
    next.rows = next.rows.map((r) => r.map((cell) => next.legend[cell] ?? cell));
  } else {
    throw Object.assign(new Error(`unknown edit ${op}`), { status: 422 });
  }
  return next;
}

export class MockService {
  sessions = new Map<string, MockSession>();
  calls: { method: string; path: string }[] = [];
  private counter = 0;
  comparisonCounter = 0;

  constructor(private readonly options: MockOptions) {}

  get fetch(): typeof fetch {
    return (async (input: RequestInfo | URL, init?: RequestInit) => {
      const url = String(input);
      const method = (init?.method ?? "GET").toUpperCase();
      const path = url.replace(/^.*\/api\/v1/, "");
      this.calls.push({ method, path });
      try {
        const payload = await this.dispatch(method, path, init);
        const status = method === "POST" && path === "/sessions" ? 201 : 200;
        return jsonResponse(status, payload);
      } catch (error) {
        const status = (error as { status?: number }).status ?? 500;
        return jsonResponse(status, {
          error: (error as { code?: string }).code ?? "error",
          detail: (error as Error).message,
        });
      }
    }) as typeof fetch;
  }

  private dispatch(method: string, path: string, init?: RequestInit): unknown {
    const body = typeof init?.body === "string" ? JSON.parse(init.body) : undefined;

    if (method === "POST" && path === "/sessions") {
      const id = `mock${this.counter++}`;
      this.sessions.set(id, { id, step: "select_region", table: null, links: [] });
      return this.sessionJson(id);
    }
    const match = path.match(/^\/sessions\/([^/]+)(\/.*)?$/);
    if (!match) throw fail(404, "unknown_route", path);
    const session = this.sessions.get(match[1]!);
    if (!session) throw fail(404, "unknown_session", match[1]!);
    const rest = match[2] ?? "";

    if (method === "GET" && rest === "") return this.sessionJson(session.id);
    if (method === "GET" && /^\/pages\/\d+$/.test(rest)) {
      return {
        index: Number(rest.split("/")[2]),
        width: 612, height: 792,
        glyphs: [{ text: "x", x0: 100, y0: 700, x1: 106, y1: 710 }],
        rulings: [{ orientation: "H", position: 702, start: 70, end: 500 }],
      };
    }
    if (method === "POST" && rest === "/extract") {
      requireAtMost(session, "edit_table");
      if (body.mode === "lattice" && this.options.grid.length === 0) {
        throw fail(422, "InsufficientRulings", "0 rulings in region");
      }
      session.table = buildTable(this.options.grid);
      session.links = [];
      session.step = "edit_table";
      return {
        n_rows: this.options.grid.length,
        n_cols: this.options.grid[0]?.length ?? 0,
        cells: this.options.grid,
        issues: [],
        table: session.table,
        violations: validate(session.table),
      };
    }
    if (method === "PUT" && rest === "/table") {
      requireExactly(session, "edit_table");
      if (!session.table) throw fail(409, "step_order", "no table yet");
      let table = session.table;
      const edits: string[] = Array.isArray(body.edits)
        ? body.edits
        : String(body.edits).split("\n");
      for (const edit of edits) {
        if (edit.trim()) table = applyEdit(table, edit.trim());
      }
      session.table = table;
      return { table, violations: validate(table) };
    }
    if (method === "POST" && rest === "/refs/link") {
      requireAtMost(session, "resolve_refs");
      const table = session.table;
      if (!table) throw fail(409, "step_order", "no table yet");
      const violations = validate(table).filter((v) => v.rule === 3);
      if (violations.length) throw fail(422, "SurveyGraphError", "rule 3 violated");
      const ref = table.columns.findIndex((c) => c.role === "reference");
      session.links = table.rows.map((row, i) => {
        const key = row[ref] ?? "";
        const linked = this.options.linkable.has(key);
        return {
          row: i, key, linked,
          ...(linked ? { entry: { title: `Paper ${key}`, authors: ["A, X"],
                                  year: 2010 + i, month: (i % 12) + 1,
                                  doi: `10.9/${i}` } } : {}),
        };
      });
      session.step = "resolve_refs";
      return { links: session.links };
    }
    if (method === "POST" && rest === "/refs/resolve") {
      requireExactly(session, "resolve_refs");
      const citation = String(body.citation_text ?? "").trim();
      if (!citation) throw fail(422, "UnrecognizedKeyFormat", "citation_text is empty");
      const row = Number(body.row);
      const link = session.links.find((l) => l.row === row);
      if (!link) throw fail(422, "SurveyGraphError", `row ${row} has no link slot`);
      const updated: LinkJson = {
        row, key: link.key, linked: true,
        entry: { title: citation.split(".")[0] ?? citation, authors: [],
                 year: null, month: null, doi: null },
      };
      session.links = session.links.map((l) => (l.row === row ? updated : l));
      return updated;
    }
    if (method === "POST" && rest === "/ingest") {
      requireExactly(session, "resolve_refs");
      if (!String(body.title ?? "").trim()) throw fail(422, "MissingTitle", "no title");
      if (!String(body.source_reference ?? "").trim()) {
        throw fail(422, "MissingSourceReference", "no source reference");
      }
      const unresolved = session.links.filter((l) => !l.linked).map((l) => l.row);
      if (unresolved.length || !session.links.length) {
        throw fail(422, "UnresolvedRows", `rows not resolved: ${unresolved}`);
      }
      session.step = "done";
      const comparison = `R${this.comparisonCounter}`;
      this.comparisonCounter += 100;
      return {
        comparison_id: comparison,
        paper_ids: session.links.map((_, i) => `R${i + 1}`),
      };
    }
    throw fail(404, "unknown_route", `${method} ${rest}`);
  }

  private sessionJson(id: string): SessionJson {
    const session = this.sessions.get(id)!;
    const payload: SessionJson = {
      session_id: id,
      step: session.step,
      page_count: this.options.pageCount ?? 2,
    };
    if (session.table) {
      payload.table = session.table;
      payload.violations = validate(session.table);
    }
    if (session.links.length) payload.links = session.links;
    return payload;
  }
}

function fail(status: number, code: string, detail: string) {
  return Object.assign(new Error(detail), { status, code });
}

function requireAtMost(session: MockSession, step: StepName): void {
  if (stepIndex(session.step) > stepIndex(step)) {
    throw fail(409, "step_order", `session is at ${session.step}`);
  }
}

function requireExactly(session: MockSession, step: StepName): void {
  if (session.step !== step) {
    throw fail(409, "step_order", `session is at ${session.step}, needs ${step}`);
  }
}

function jsonResponse(status: number, payload: unknown): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export function surveyGrid(): string[][] {
  const rows: string[][] = [["Reference", "[R] Method", "Accuracy"]];
  for (let i = 1; i <= 10; i++) {
    rows.push([`[${i}]`, `M${i}`, `0.${80 + i}`]);
  }
  return rows;
}

export function surveyLinkable(): Set<string> {
  return new Set(Array.from({ length: 10 }, (_, i) => `[${i + 1}]`));
}
