// Spreadsheet-style table editor. Every action commits one edit command to
// the server; the grid below always re-renders from the server's table, and
// violation badges come from the server's rule checks.

import { quoteArg } from "./api";
import type { TableJson, ViolationJson } from "./api";
import { WizardController } from "./controller";
import { clear, el } from "./dom";

const RULE_HINTS: Record<number, string> = {
  1: "header labels must be non-empty",
  2: "one paper per row",
  3: "mark exactly one Reference column",
  4: "reference cells must be filled",
  5: "resource prefix left in a label",
  6: "legend abbreviations not expanded",
};

export function renderEditor(
  container: HTMLElement,
  table: TableJson,
  violations: ViolationJson[],
  controller: WizardController,
): void {
  clear(container);
  const doc = container.ownerDocument;

  container.appendChild(renderBadgeBar(doc, violations));
  container.appendChild(renderToolbar(doc, controller));

  const grid = el(doc, "table", { class: "editor-grid", "data-testid": "editor-grid" });
  const head = el(doc, "tr");
  for (let c = 0; c < table.columns.length; c++) {
    const column = table.columns[c]!;
    const th = el(doc, "th", { "data-testid": `col-${c}` });
    const label = el(doc, "input", {
      class: "col-label",
      "data-testid": `col-label-${c}`,
      value: column.label,
    });
    label.addEventListener("change", () => {
      void controller.edit([`rename_column ${c} ${quoteArg(label.value)}`]);
    });
    const kind = el(
      doc,
      "button",
      { class: `kind-toggle ${column.kind}`, "data-testid": `kind-toggle-${c}`,
        title: "toggle resource/literal" },
      column.kind === "resource" ? "[R]" : "lit",
    );
    kind.addEventListener("click", () => {
      const next = column.kind === "resource" ? "literal" : "resource";
      void controller.edit([`set_kind ${c} ${next}`]);
    });
    const refPick = el(doc, "input", {
      type: "radio",
      name: "reference-column",
      "data-testid": `ref-pick-${c}`,
      title: "use as Reference column",
    }) as HTMLInputElement;
    refPick.checked = column.role === "reference";
    refPick.addEventListener("change", () => {
      if (refPick.checked) void controller.edit([`set_reference_column ${c}`]);
    });
    th.append(refPick, label, kind);
    if (column.role === "metadata") th.classList.add("metadata-col");
    head.appendChild(th);
  }
  grid.appendChild(head);

  const badgeAt = new Map<string, ViolationJson>();
  for (const violation of violations) {
    if (violation.row !== null && violation.col !== null) {
      badgeAt.set(`${violation.row}:${violation.col}`, violation);
    }
  }

  for (let r = 0; r < table.rows.length; r++) {
    const row = table.rows[r]!;
    const tr = el(doc, "tr");
    for (let c = 0; c < row.length; c++) {
      const td = el(doc, "td");
      const input = el(doc, "input", {
        class: "cell-input",
        "data-testid": `cell-${r}-${c}`,
        value: row[c]!,
      });
      input.addEventListener("change", () => {
        void controller.edit([`set_cell ${r} ${c} ${quoteArg(input.value)}`]);
      });
      td.appendChild(input);
      const violation = badgeAt.get(`${r}:${c}`);
      if (violation) {
        td.appendChild(el(doc, "span", {
          class: "violation-badge",
          "data-testid": `badge-${r}-${c}`,
          "data-rule": String(violation.rule),
          title: violation.message,
        }, `rule ${violation.rule}`));
      }
      tr.appendChild(td);
    }
    const drop = el(doc, "button", { "data-testid": `drop-row-${r}` }, "✕");
    drop.addEventListener("click", () => {
      void controller.edit([`drop_row ${r}`]);
    });
    tr.appendChild(el(doc, "td")).appendChild(drop);
    grid.appendChild(tr);
  }
  container.appendChild(grid);
  container.appendChild(renderLegendPanel(doc, table, controller));
}

function renderBadgeBar(doc: Document, violations: ViolationJson[]): HTMLElement {
  const bar = el(doc, "div", { class: "badge-bar", "data-testid": "badge-bar" });
  const rules = [...new Set(violations.map((v) => v.rule))].sort();
  for (const rule of rules) {
    const count = violations.filter((v) => v.rule === rule).length;
    bar.appendChild(el(doc, "span", {
      class: "rule-badge",
      "data-testid": `rule-badge-${rule}`,
      title: RULE_HINTS[rule] ?? "",
    }, `rule ${rule} ×${count}`));
  }
  if (!rules.length) {
    bar.appendChild(el(doc, "span", { class: "all-clear" }, "all rules satisfied"));
  }
  return bar;
}

function renderToolbar(doc: Document, controller: WizardController): HTMLElement {
  const bar = el(doc, "div", { class: "editor-toolbar" });

  const transpose = el(doc, "button", { "data-testid": "btn-transpose" }, "transpose");
  transpose.addEventListener("click", () => {
    void controller.edit(["transpose"]);
  });

  const mergeA = numberInput(doc, "merge-row-a");
  const mergeB = numberInput(doc, "merge-row-b");
  const mergeRows = el(doc, "button", { "data-testid": "btn-merge-rows" }, "merge rows");
  mergeRows.addEventListener("click", () => {
    void controller.edit([`merge_rows ${mergeA.value} ${mergeB.value}`]);
  });

  const splitCol = numberInput(doc, "split-col");
  const splitDelim = el(doc, "input", { "data-testid": "split-delim", size: "3", value: ";" });
  const split = el(doc, "button", { "data-testid": "btn-split-column" }, "split column");
  split.addEventListener("click", () => {
    void controller.edit([`split_column ${splitCol.value} ${quoteArg(splitDelim.value)}`]);
  });

  const dropCol = numberInput(doc, "drop-col");
  const drop = el(doc, "button", { "data-testid": "btn-drop-column" }, "drop column");
  drop.addEventListener("click", () => {
    void controller.edit([`drop_column ${dropCol.value}`]);
  });

  bar.append(transpose, mergeA, mergeB, mergeRows, splitCol, splitDelim, split,
             dropCol, drop);
  return bar;
}

function renderLegendPanel(
  doc: Document,
  table: TableJson,
  controller: WizardController,
): HTMLElement {
  const panel = el(doc, "div", { class: "legend-panel", "data-testid": "legend-panel" });
  panel.appendChild(el(doc, "h3", {}, "Legend"));
  const list = el(doc, "ul");
  for (const [key, value] of Object.entries(table.legend)) {
    list.appendChild(el(doc, "li", {}, `${key} → ${value}`));
  }
  panel.appendChild(list);

  const key = el(doc, "input", { "data-testid": "legend-key", placeholder: "abbrev" });
  const value = el(doc, "input", { "data-testid": "legend-value", placeholder: "full value" });
  const add = el(doc, "button", { "data-testid": "btn-legend-add" }, "add entry");
  add.addEventListener("click", () => {
    if (!key.value || !value.value) return;
    void controller.edit([`legend ${quoteArg(`${key.value}=${value.value}`)}`]);
  });
  const expand = el(doc, "button", { "data-testid": "btn-expand-legend" }, "expand legend");
  expand.addEventListener("click", () => {
    void controller.edit(["expand_legend"]);
  });
  panel.append(key, value, add, expand);
  return panel;
}

function numberInput(doc: Document, testid: string): HTMLInputElement {
  return el(doc, "input", {
    type: "number",
    "data-testid": testid,
    value: "0",
    min: "0",
    size: "3",
  }) as HTMLInputElement;
}
