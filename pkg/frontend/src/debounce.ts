/** Trailing-edge debounce for slider and keystroke driven requests. */
export function debounce<F extends (...args: never[]) => void>(
  fn: F,
  waitMs: number,
): (...args: Parameters<F>) => void {
  let handle: ReturnType<typeof setTimeout> | undefined;
  return (...args: Parameters<F>) => {
    if (handle !== undefined) clearTimeout(handle);
    handle = setTimeout(() => fn(...args), waitMs);
  };
}

/**
 * Monotone token issuer guarding against out-of-order responses: take a
 * ticket before a request, keep the response only if the ticket is still
 * the newest when it lands.
 */
export class StaleGuard {
  private current = 0;

  issue(): number {
    this.current += 1;
    return this.current;
  }

  isCurrent(token: number): boolean {
    return token === this.current;
  }
}
