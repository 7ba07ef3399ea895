// Wizard shell: fixed-order step chips, one panel per step, a Next button
// that stays disabled while the current step's exit conditions fail.

import { ApiClient } from "./api";
import type { ExtractMode, PageJson, RegionJson } from "./api";
import { attachSelection, renderPageSvg, viewportFor } from "./canvas";
import { WizardController } from "./controller";
import { clear, el } from "./dom";
import { renderEditor } from "./editor";
import { renderResolver } from "./resolver";
import { STEP_LABELS, STEP_ORDER, WizardState } from "./state";

export interface App {
  state: WizardState;
  controller: WizardController;
  render: () => void;
}

export function createApp(root: HTMLElement, api?: ApiClient): App {
  const doc = root.ownerDocument;
  const state = new WizardState();
  const controller = new WizardController(api ?? new ApiClient(), state);
  let mode: ExtractMode = "lattice";
  let lastRegion: RegionJson | null = null;
  let page: PageJson | null = null;

  async function showPage(index: number): Promise<void> {
    page = await controller.loadPage(index);
    state.currentPage = index;
    state.notify();
  }

  function render(): void {
    clear(root);
    root.appendChild(renderChips());
    if (state.lastError) {
      root.appendChild(el(doc, "div", { class: "error-bar", "data-testid": "error-bar" },
                          state.lastError));
    }
    const panel = el(doc, "div", { class: "panel" });
    root.appendChild(panel);
    switch (state.step) {
      case "upload":
        renderUpload(panel);
        break;
      case "select_region":
        renderSelect(panel);
        break;
      case "edit_table":
        renderEdit(panel);
        break;
      case "resolve_refs":
      case "ingest":
        renderResolver(panel, state.links, controller);
        break;
      case "done":
        renderDone(panel);
        break;
    }
  }

  function renderChips(): HTMLElement {
    const bar = el(doc, "nav", { class: "step-chips", "data-testid": "step-chips" });
    for (const step of STEP_ORDER) {
      const chip = el(doc, "span", {
        class: "chip" + (state.step === step ? " active" : "")
          + (state.stepIndex(step) < state.stepIndex() ? " complete" : ""),
        "data-testid": `chip-${step}`,
      }, STEP_LABELS[step]);
      bar.appendChild(chip);
    }
    return bar;
  }

  function renderUpload(panel: HTMLElement): void {
    panel.appendChild(el(doc, "h2", {}, "Upload a survey article (PDF)"));
    const input = el(doc, "input", { type: "file", accept: "application/pdf",
                                     "data-testid": "file-input" }) as HTMLInputElement;
    input.addEventListener("change", () => {
      const file = input.files?.[0];
      if (file) {
        void controller.upload(file, file.name).then(() => showPage(0));
      }
    });
    panel.appendChild(input);
  }

  function renderSelect(panel: HTMLElement): void {
    panel.appendChild(el(doc, "h2", {}, "Drag over the survey table"));

    const controls = el(doc, "div", { class: "select-controls" });
    const modeToggle = el(doc, "button", { "data-testid": "mode-toggle" },
                          `method: ${mode}`);
    modeToggle.addEventListener("click", () => {
      mode = mode === "lattice" ? "stream" : "lattice";
      state.notify();
    });
    controls.appendChild(modeToggle);
    if (controller.modeHint && controller.modeHint !== mode) {
      controls.appendChild(el(doc, "span", { class: "hint", "data-testid": "mode-hint" },
                              `no table borders found — switch to ${controller.modeHint}`));
    }
    for (let i = 0; i < state.pageCount; i++) {
      const btn = el(doc, "button", { "data-testid": `page-btn-${i}` }, `page ${i + 1}`);
      btn.addEventListener("click", () => {
        void showPage(i);
      });
      controls.appendChild(btn);
    }
    panel.appendChild(controls);

    if (page) {
      const vp = viewportFor(page, 800);
      const svg = renderPageSvg(doc, page, vp);
      attachSelection(svg, vp, page.index, {
        onRegion: (region) => {
          lastRegion = region;
          void controller.extract(region, mode);
        },
      });
      panel.appendChild(svg);
    }
  }

  function renderEdit(panel: HTMLElement): void {
    panel.appendChild(el(doc, "h2", {}, "Fix the table"));
    const editor = el(doc, "div", { class: "editor" });
    panel.appendChild(editor);
    if (state.table) {
      renderEditor(editor, state.table, state.violations, controller);
    }
    const reextract = el(doc, "button", { "data-testid": "btn-reextract" },
                         "re-extract with the other method");
    reextract.addEventListener("click", () => {
      if (lastRegion) {
        mode = mode === "lattice" ? "stream" : "lattice";
        void controller.extract(lastRegion, mode);
      }
    });
    const next = el(doc, "button", { "data-testid": "btn-next" },
                    "Next: resolve references") as HTMLButtonElement;
    next.disabled = !state.canLeave("edit_table");
    next.addEventListener("click", () => {
      void controller.link();
    });
    panel.append(reextract, next);
  }

  function renderDone(panel: HTMLElement): void {
    const result = state.result;
    panel.appendChild(el(doc, "h2", {}, "Imported"));
    if (result) {
      panel.appendChild(el(doc, "p", { "data-testid": "done-comparison" },
                           `comparison ${result.comparison_id}`));
      panel.appendChild(el(doc, "p", { "data-testid": "done-papers" },
                           `${result.paper_ids.length} papers`));
    }
  }

  state.subscribe(render);
  render();
  return { state, controller, render };
}

declare global {
  interface Window {
    surveygraphApp?: App;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  window.surveygraphApp = createApp(document.getElementById("app")!);
}
