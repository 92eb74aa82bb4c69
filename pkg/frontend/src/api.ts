/** Typed client for the /v1 API; server error envelopes become ApiClientError. */

import type {
  ChatView,
  CreateSessionResponse,
  EventRecord,
  FeedbackBundle,
  FraudReportResult,
  MarketView,
  NewsView,
  PortfolioView,
  SessionAnalytics,
  StockView,
  TradeResult,
} from "./types.js";

export class ApiClientError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiClientError";
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "Content-Type": "application/json" } };
    if (body !== undefined) init.body = JSON.stringify(body);
    const res = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const text = await res.text();
    const doc = text ? JSON.parse(text) : {};
    if (!res.ok) {
      const err = (doc as { error?: { code?: string; message?: string } }).error;
      throw new ApiClientError(
        res.status,
        err?.code ?? `HTTP${res.status}`,
        err?.message ?? `request failed with status ${res.status}`,
      );
    }
    return doc as T;
  }

  health(): Promise<{ ok: boolean; tick: number }> {
    return this.request("GET", "/v1/health");
  }

  createSession(age: number): Promise<CreateSessionResponse> {
    return this.request("POST", "/v1/sessions", { age });
  }

  market(): Promise<MarketView> {
    return this.request("GET", "/v1/market");
  }

  stock(stockId: string): Promise<StockView> {
    return this.request("GET", `/v1/stocks/${encodeURIComponent(stockId)}`);
  }

  news(): Promise<NewsView> {
    return this.request("GET", "/v1/news");
  }

  chat(): Promise<ChatView> {
    return this.request("GET", "/v1/chat");
  }

  postEvents(sessionId: string, events: EventRecord[]): Promise<{ accepted: number }> {
    return this.request("POST", `/v1/sessions/${encodeURIComponent(sessionId)}/events`, { events });
  }

  trade(sessionId: string, stockId: string, side: "Buy" | "Sell", shares: number): Promise<TradeResult> {
    return this.request("POST", `/v1/sessions/${encodeURIComponent(sessionId)}/trades`, {
      stock_id: stockId,
      side,
      shares,
    });
  }

  reportFraud(sessionId: string, stockId: string): Promise<FraudReportResult> {
    return this.request("POST", `/v1/sessions/${encodeURIComponent(sessionId)}/report-fraud`, {
      stock_id: stockId,
    });
  }

  portfolio(sessionId: string): Promise<PortfolioView> {
    return this.request("GET", `/v1/sessions/${encodeURIComponent(sessionId)}/portfolio`);
  }

  analytics(sessionId: string): Promise<SessionAnalytics> {
    return this.request("GET", `/v1/sessions/${encodeURIComponent(sessionId)}/analytics`);
  }

  feedback(sessionId: string): Promise<FeedbackBundle> {
    return this.request("GET", `/v1/sessions/${encodeURIComponent(sessionId)}/feedback`);
  }

  advance(ticks = 1): Promise<{ current_tick: number }> {
    return this.request("POST", "/v1/admin/advance", { ticks });
  }
}
