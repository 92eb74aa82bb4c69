/** Payload types of the /v1 JSON API. */

export interface SessionInfo {
  session_id: string;
  user_age: number;
  scenario_id: string;
  created_at: string;
  current_tick: number;
}

export interface PositionRow {
  stock_id: string;
  ticker: string;
  shares: number;
  cost_basis_cents: number;
  price_cents: number;
  value_cents: number;
}

export interface PortfolioView {
  session_id: string;
  tick: number;
  cash_cents: number;
  cash: number;
  xp: number;
  level: number;
  positions: PositionRow[];
  total_value_cents: number;
}

export interface CreateSessionResponse {
  session: SessionInfo;
  portfolio: PortfolioView;
}

export interface MarketRow {
  stock_id: string;
  ticker: string;
  name: string;
  sector: string;
  price_cents: number;
  price: number;
  change_cents: number;
  delisted: boolean;
}

export interface MarketView {
  tick: number;
  stocks: MarketRow[];
}

export interface StockView {
  stock_id: string;
  ticker: string;
  name: string;
  sector: string;
  float_shares: number;
  tick: number;
  price_cents: number;
  price: number;
  delisted: boolean;
  price_history_cents: number[];
}

export type Sentiment = "Positive" | "Negative" | "Neutral";
export type SourceTrust = "Trusted" | "Untrusted";

export interface ArticleRow {
  article_id: string;
  stock_id: string;
  headline: string;
  body: string;
  sentiment: Sentiment;
  source_trust: SourceTrust;
  publish_tick: number;
}

export interface NewsView {
  tick: number;
  articles: ArticleRow[];
}

export interface ChatMessageRow {
  message_id: string;
  author: "Mascot" | "Recruiter" | "User";
  text: string;
  publish_tick: number;
  reply_options: string[];
}

export interface ChatView {
  tick: number;
  messages: ChatMessageRow[];
}

export interface FeedbackBundle {
  session_id: string;
  predicted_type: string;
  confidence: number;
  elements: string[];
  scams: string[];
  difficulty: string;
}

export interface Footprint {
  [metric: string]: number | string | null;
}

export interface SessionAnalytics {
  session_id: string;
  footprint: Footprint;
  portfolio: PortfolioView;
}

export interface TradeResult {
  trade: {
    stock_id: string;
    side: "Buy" | "Sell";
    shares: number;
    price_cents: number;
    realized_pnl_cents?: number;
    cash_after_cents: number;
  };
  tick: number;
  portfolio: PortfolioView;
}

export interface FraudReportResult {
  stock_id: string;
  correct: boolean;
  xp_delta: number;
  portfolio: PortfolioView;
}

export type EventKind =
  | "PageEnter"
  | "PageLeave"
  | "ReadArticleStart"
  | "ReadArticleEnd"
  | "ChatReply";

export interface EventRecord {
  kind: EventKind;
  tick: number;
  wall_time: number;
  payload: Record<string, unknown>;
}
