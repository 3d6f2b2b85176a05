/** Debounced recompute and stale-response discarding. */

type TimerId = ReturnType<typeof setTimeout>;

export interface Timers {
  set: (fn: () => void, ms: number) => TimerId;
  clear: (id: TimerId) => void;
}

const realTimers: Timers = {
  set: (fn, ms) => setTimeout(fn, ms),
  clear: (id) => clearTimeout(id),
};

/** Runs `fn` once the trigger stream has been quiet for `delayMs`;
 * `flush()` fires immediately (slider release). */
export class Debouncer {
  private pending: TimerId | null = null;

  constructor(
    private readonly fn: () => void,
    private readonly delayMs: number,
    private readonly timers: Timers = realTimers,
  ) {}

  trigger(): void {
    this.cancel();
    this.pending = this.timers.set(() => {
      this.pending = null;
      this.fn();
    }, this.delayMs);
  }

  flush(): void {
    this.cancel();
    this.fn();
  }

  cancel(): void {
    if (this.pending !== null) {
      this.timers.clear(this.pending);
      this.pending = null;
    }
  }
}

/** Monotone sequence numbers; a response is applied only if no newer
 * request has been issued since it was sent. */
export class SequenceGate {
  private issued = 0;
  private applied = 0;

  issue(): number {
    return ++this.issued;
  }

  accept(seq: number): boolean {
    if (seq < this.issued || seq <= this.applied) {
      return false;
    }
    this.applied = seq;
    return true;
  }

  get lastIssued(): number {
    return this.issued;
  }
}
