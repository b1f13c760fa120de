/** Where the screening API lives.
 *
 * Resolution order: an explicit override set by the host page (or a test),
 * then a `<meta name="respscreen-api-base">` tag, then same-origin relative
 * paths. The returned base never ends with a slash so callers can append
 * `/api/v1/...` directly.
 */

let override: string | null = null;

export function setApiBase(base: string | null): void {
  override = base === null ? null : stripTrailingSlash(base);
}

export function apiBase(): string {
  if (override !== null) {
    return override;
  }
  if (typeof document !== "undefined") {
    const meta = document.querySelector('meta[name="respscreen-api-base"]');
    const content = meta?.getAttribute("content");
    if (content) {
      return stripTrailingSlash(content);
    }
  }
  return "";
}

function stripTrailingSlash(base: string): string {
  return base.endsWith("/") ? base.slice(0, -1) : base;
}
