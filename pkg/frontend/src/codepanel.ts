/**
 * The source viewer: plain monospaced text with line numbers, a
 * highlighted span, and a scroll that brings the span into view.
 */

import { SourceJson, SpanJson } from "./types.js";

export const LINE_HEIGHT = 18;

/** Pixel offset that puts the target line near the top with context. */
export function scrollOffsetFor(line: number): number {
  return Math.max(0, (line - 4) * LINE_HEIGHT);
}

export function renderSource(
  panel: HTMLElement,
  source: SourceJson,
  span: SpanJson | null,
): void {
  const doc = panel.ownerDocument;
  panel.replaceChildren();

  const header = doc.createElement("div");
  header.className = "code-header";
  header.textContent = source.path;
  panel.appendChild(header);

  const body = doc.createElement("div");
  body.className = "code-lines";
  const lines = source.content.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const lineNo = i + 1;
    const row = doc.createElement("div");
    row.className = "code-line";
    if (span && lineNo >= span.sl && lineNo <= span.el) {
      row.className += " hl";
    }
    row.setAttribute("data-line", String(lineNo));

    const num = doc.createElement("span");
    num.className = "ln";
    num.textContent = String(lineNo);
    row.appendChild(num);

    const text = doc.createElement("span");
    text.className = "code";
    text.textContent = lines[i];
    row.appendChild(text);

    body.appendChild(row);
  }
  panel.appendChild(body);

  if (span) {
    const offset = scrollOffsetFor(span.sl);
    panel.setAttribute("data-scroll-line", String(span.sl));
    body.scrollTop = offset;
  } else {
    panel.removeAttribute("data-scroll-line");
  }
}
