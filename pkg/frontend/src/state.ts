/** Minimal observable store; views re-render on every state change. */

import type {
  ChatView,
  CreateSessionResponse,
  FeedbackBundle,
  MarketView,
  NewsView,
  PortfolioView,
  SessionAnalytics,
  SessionInfo,
  StockView,
} from "./types.js";

export type Page = "portfolio" | "market" | "stock" | "news" | "analytics" | "chat";

export interface ViewState {
  page: Page;
  stockId: string | null;
  session: SessionInfo | null;
  portfolio: PortfolioView | null;
  market: MarketView | null;
  stock: StockView | null;
  news: NewsView | null;
  chat: ChatView | null;
  analytics: SessionAnalytics | null;
  feedback: FeedbackBundle | null;
  /** Chat exchanges this session: scripted message id -> chosen reply. */
  chatLog: { messageId: string; reply: string }[];
  readingArticleId: string | null;
  error: string | null;
  notice: string | null;
}

export function initialState(): ViewState {
  return {
    page: "market",
    stockId: null,
    session: null,
    portfolio: null,
    market: null,
    stock: null,
    news: null,
    chat: null,
    analytics: null,
    feedback: null,
    chatLog: [],
    readingArticleId: null,
    error: null,
    notice: null,
  };
}

export class Store {
  private state: ViewState = initialState();
  private subscribers = new Set<(s: ViewState) => void>();

  getState(): ViewState {
    return this.state;
  }

  update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.subscribers) fn(this.state);
  }

  subscribe(fn: (s: ViewState) => void): () => void {
    this.subscribers.add(fn);
    return () => this.subscribers.delete(fn);
  }
}

export function applySessionCreated(store: Store, res: CreateSessionResponse): void {
  store.update({ session: res.session, portfolio: res.portfolio, error: null });
}
