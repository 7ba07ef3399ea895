// Reference resolution and ingestion: per-row link status, a paste dialog
// for unlinked rows, a preview of the five metadata columns, and the final
// ingest form capturing the comparison title and survey attribution.

import type { LinkJson } from "./api";
import { WizardController } from "./controller";
import { clear, el } from "./dom";

export function renderResolver(
  container: HTMLElement,
  links: LinkJson[],
  controller: WizardController,
): void {
  clear(container);
  const doc = container.ownerDocument;

  const pending = links.filter((l) => !l.linked).length;
  container.appendChild(el(doc, "p", { "data-testid": "resolve-summary" },
    pending === 0
      ? `all ${links.length} rows linked`
      : `${pending} of ${links.length} rows need a citation`));

  const list = el(doc, "table", { class: "link-list", "data-testid": "link-list" });
  const head = el(doc, "tr");
  for (const label of ["Row", "Key", "Status", "Title", "Authors", "Month", "Year", "DOI", ""]) {
    head.appendChild(el(doc, "th", {}, label));
  }
  list.appendChild(head);

  for (const link of links) {
    const tr = el(doc, "tr", { "data-testid": `link-row-${link.row}` });
    tr.appendChild(el(doc, "td", {}, String(link.row)));
    tr.appendChild(el(doc, "td", {}, link.key));
    tr.appendChild(el(doc, "td", {
      class: link.linked ? "status-linked" : "status-notfound",
      "data-testid": `link-status-${link.row}`,
    }, link.linked ? "linked" : "not found"));
    const entry = link.entry;
    tr.appendChild(el(doc, "td", {}, entry?.title ?? ""));
    tr.appendChild(el(doc, "td", {}, entry ? entry.authors.join("; ") : ""));
    tr.appendChild(el(doc, "td", {}, entry?.month != null ? String(entry.month) : ""));
    tr.appendChild(el(doc, "td", {}, entry?.year != null ? String(entry.year) : ""));
    tr.appendChild(el(doc, "td", {}, entry?.doi ?? ""));

    const action = el(doc, "td");
    if (!link.linked) {
      const paste = el(doc, "button", { "data-testid": `btn-paste-${link.row}` },
                       "paste citation");
      paste.addEventListener("click", () => {
        openPasteDialog(container, link, controller);
      });
      action.appendChild(paste);
    }
    tr.appendChild(action);
    list.appendChild(tr);
  }
  container.appendChild(list);
  container.appendChild(renderIngestForm(doc, pending === 0, controller));
}

function openPasteDialog(
  container: HTMLElement,
  link: LinkJson,
  controller: WizardController,
): void {
  const doc = container.ownerDocument;
  container.querySelector(".paste-dialog")?.remove();
  const dialog = el(doc, "div", { class: "paste-dialog", "data-testid": "paste-dialog" });
  dialog.appendChild(el(doc, "p", {},
    `Row ${link.row}: paste the full citation for ${link.key || "this row"}`));
  const text = el(doc, "textarea", { "data-testid": "paste-text", rows: "3" });
  const submit = el(doc, "button", { "data-testid": "btn-paste-submit" }, "resolve");
  submit.addEventListener("click", () => {
    const citation = text.value.trim();
    if (!citation) return;
    void controller.resolve(link.row, citation).then(() => dialog.remove());
  });
  const cancel = el(doc, "button", { "data-testid": "btn-paste-cancel" }, "cancel");
  cancel.addEventListener("click", () => dialog.remove());
  dialog.append(text, submit, cancel);
  container.appendChild(dialog);
}

function renderIngestForm(
  doc: Document,
  allLinked: boolean,
  controller: WizardController,
): HTMLElement {
  const form = el(doc, "div", { class: "ingest-form", "data-testid": "ingest-form" });
  form.appendChild(el(doc, "h3", {}, "Ingest into the graph"));
  const title = el(doc, "input", {
    "data-testid": "ingest-title",
    placeholder: "comparison title (from the table caption)",
  });
  const source = el(doc, "input", {
    "data-testid": "ingest-source",
    placeholder: "survey article reference (attribution)",
  });
  const hint = el(doc, "p", { class: "form-hint", "data-testid": "ingest-hint" }, "");
  const submit = el(doc, "button", { "data-testid": "btn-ingest" }, "ingest") as
    HTMLButtonElement;
  submit.disabled = !allLinked;
  if (!allLinked) hint.textContent = "resolve all rows first";
  submit.addEventListener("click", () => {
    if (!title.value.trim()) {
      hint.textContent = "a title is required";
      return;
    }
    if (!source.value.trim()) {
      hint.textContent = "the survey reference is required";
      return;
    }
    void controller.ingest(title.value.trim(), source.value.trim());
  });
  form.append(title, source, submit, hint);
  return form;
}
