/** Rule editor: a text buffer for the session's rule document plus an
 * inline diagnostics pane.  The buffer is preserved on rejected saves. */

import type { ApiClient } from "./api.js";

export interface RuleEditorHandle {
  load(): Promise<void>;
  save(): Promise<boolean>;
  readonly textarea: HTMLTextAreaElement;
  readonly diagnosticsPane: HTMLElement;
}

export function mountRuleEditor(
  container: HTMLElement,
  api: ApiClient,
  sessionId: string,
  onSaved?: () => void | Promise<void>,
): RuleEditorHandle {
  container.textContent = "";
  const textarea = document.createElement("textarea");
  textarea.className = "rule-buffer";
  textarea.rows = 18;
  textarea.spellcheck = false;

  const saveButton = document.createElement("button");
  saveButton.className = "rule-save";
  saveButton.textContent = "Save rules";

  const diagnosticsPane = document.createElement("ul");
  diagnosticsPane.className = "rule-diagnostics";

  container.append(textarea, saveButton, diagnosticsPane);

  function showDiagnostics(items: string[]): void {
    diagnosticsPane.textContent = "";
    for (const item of items) {
      const li = document.createElement("li");
      li.className = "diagnostic";
      li.textContent = item;
      diagnosticsPane.appendChild(li);
    }
  }

  const handle: RuleEditorHandle = {
    textarea,
    diagnosticsPane,
    async load() {
      textarea.value = await api.rulesText(sessionId);
      showDiagnostics([]);
    },
    async save() {
      const diagnostics = await api.putRules(sessionId, textarea.value);
      showDiagnostics(diagnostics);
      if (diagnostics.length === 0) {
        await onSaved?.();
        return true;
      }
      return false; // buffer stays as typed for fixing
    },
  };

  saveButton.addEventListener("click", () => void handle.save());
  return handle;
}
