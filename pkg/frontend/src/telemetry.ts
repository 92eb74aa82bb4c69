/** Dwell instrumentation with guaranteed Start/End pairing and ordered flushes.
 *
 * The buffer never emits an End without a matching open Start (a stray leave
 * is dropped and counted instead), timestamps come from an injectable clock so
 * tests and the e2e harness can fake time, and leave/end records carry the
 * relative dwell duration alongside the timestamps. Flushes send one batch at
 * a time; a failed batch goes back to the front of the queue, preserving
 * event order for when the connection returns.
 */

import type { ApiClient } from "./api.js";
import type { ArticleRow, EventKind, EventRecord } from "./types.js";

export type Clock = () => number;

export const systemClock: Clock = () => Date.now() / 1000;

function pageKey(page: string, stockId?: string): string {
  return `page:${page}:${stockId ?? ""}`;
}

function articleKey(articleId: string): string {
  return `article:${articleId}`;
}

export class Telemetry {
  private buffer: EventRecord[] = [];
  private open = new Map<string, number[]>();
  private flushing = false;
  /** Stray leave/end calls that had no open start; never sent to the server. */
  public droppedUnmatched = 0;
  public currentTick = 0;

  constructor(
    private api: ApiClient,
    private sessionId: string,
    private clock: Clock = systemClock,
    private flushEvery = 10,
  ) {}

  private push(kind: EventKind, payload: Record<string, unknown>): EventRecord {
    const record: EventRecord = {
      kind,
      tick: this.currentTick,
      wall_time: this.clock(),
      payload,
    };
    this.buffer.push(record);
    return record;
  }

  private openStart(key: string, at: number): void {
    const stack = this.open.get(key) ?? [];
    stack.push(at);
    this.open.set(key, stack);
  }

  private closeStart(key: string): number | null {
    const stack = this.open.get(key);
    if (!stack || stack.length === 0) {
      this.droppedUnmatched += 1;
      return null;
    }
    return stack.pop()!;
  }

  pageEnter(page: string, stockId?: string): void {
    const payload: Record<string, unknown> = { page };
    if (stockId) payload.stock_id = stockId;
    const rec = this.push("PageEnter", payload);
    this.openStart(pageKey(page, stockId), rec.wall_time);
  }

  pageLeave(page: string, stockId?: string): void {
    const started = this.closeStart(pageKey(page, stockId));
    if (started === null) return;
    const payload: Record<string, unknown> = { page };
    if (stockId) payload.stock_id = stockId;
    const rec = this.push("PageLeave", payload);
    payload.duration = rec.wall_time - started;
  }

  readStart(article: ArticleRow): void {
    const rec = this.push("ReadArticleStart", {
      article_id: article.article_id,
      sentiment: article.sentiment,
      source_trust: article.source_trust,
    });
    this.openStart(articleKey(article.article_id), rec.wall_time);
  }

  readEnd(article: ArticleRow): void {
    const started = this.closeStart(articleKey(article.article_id));
    if (started === null) return;
    const payload: Record<string, unknown> = {
      article_id: article.article_id,
      sentiment: article.sentiment,
      source_trust: article.source_trust,
    };
    const rec = this.push("ReadArticleEnd", payload);
    payload.duration = rec.wall_time - started;
  }

  chatReply(messageId: string, reply: string): void {
    this.push("ChatReply", { message_id: messageId, reply });
  }

  pendingCount(): number {
    return this.buffer.length;
  }

  /** True when enough events piled up that a flush is due. */
  flushDue(): boolean {
    return this.buffer.length >= this.flushEvery;
  }

  /** Send everything buffered; on failure the batch is re-queued in order. */
  async flush(): Promise<number> {
    if (this.flushing || this.buffer.length === 0) return 0;
    this.flushing = true;
    const batch = this.buffer;
    this.buffer = [];
    try {
      const res = await this.api.postEvents(this.sessionId, batch);
      return res.accepted;
    } catch (err) {
      this.buffer = batch.concat(this.buffer);
      throw err;
    } finally {
      this.flushing = false;
    }
  }
}
