/** Pure HTML renderers: every view is a function of the store state alone. */

import { priceChartSvg } from "./chart.js";
import { describeBundle, uiToggles } from "./feedback.js";
import type { Page, ViewState } from "./state.js";

export function esc(text: unknown): string {
  return String(text)
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function dollars(cents: number): string {
  return `$${(cents / 100).toFixed(2)}`;
}

const PAGE_TITLES: Record<Page, string> = {
  portfolio: "Portfolio",
  market: "Market",
  stock: "Stock details",
  news: "News",
  analytics: "Analytics",
  chat: "Chat",
};

export function renderNav(state: ViewState): string {
  const toggles = uiToggles(state.feedback);
  const tabs: Page[] = ["portfolio", "market", "news", "analytics", "chat"];
  const links = tabs
    .map((p) => {
      const active = state.page === p ? " active" : "";
      return `<a class="tab${active}" href="#/${p}" data-page="${p}">${PAGE_TITLES[p]}</a>`;
    })
    .join("");
  const leaderboard = toggles.leaderboard
    ? `<a class="tab" href="#/leaderboard" data-page="leaderboard">Leaderboard</a>`
    : "";
  const xp = state.portfolio ? state.portfolio.xp : 0;
  const level = state.portfolio ? state.portfolio.level : 1;
  const points = `<span class="points" data-testid="points">XP ${xp} &middot; L${level}</span>`;
  return `<nav>${links}${leaderboard}${points}</nav>`;
}

export function renderFeedbackPanel(state: ViewState): string {
  const toggles = uiToggles(state.feedback);
  const parts: string[] = [];
  if (state.feedback) {
    parts.push(`<p class="bundle">${esc(describeBundle(state.feedback))}</p>`);
  }
  if (toggles.quests) {
    parts.push(
      `<section class="quest-tracker" data-testid="quest-tracker"><h3>Quests</h3>` +
        `<ul><li>Spot a manipulated stock and report it</li>` +
        `<li>Read three articles from trusted sources</li></ul></section>`,
    );
  }
  if (toggles.badges) {
    parts.push(
      `<section class="badges-shelf" data-testid="badges-shelf"><h3>Badges</h3>` +
        `<ul><li>First trade</li><li>Fraud spotter</li></ul></section>`,
    );
  }
  return `<aside class="feedback">${parts.join("")}</aside>`;
}

export function renderPortfolio(state: ViewState): string {
  const p = state.portfolio;
  if (!p) return `<p class="empty">No session yet.</p>`;
  const rows = p.positions
    .map(
      (pos) => `<tr>
        <td>${esc(pos.ticker)}</td><td>${pos.shares}</td>
        <td>${dollars(pos.price_cents)}</td><td>${dollars(pos.value_cents)}</td>
        <td class="${pos.value_cents >= pos.cost_basis_cents ? "gain" : "loss"}">
          ${dollars(pos.value_cents - pos.cost_basis_cents)}</td>
        <td><button data-action="sell" data-stock="${esc(pos.stock_id)}" data-shares="${pos.shares}">Sell all</button></td>
      </tr>`,
    )
    .join("");
  return `<section class="portfolio">
    <h2>Personal portfolio</h2>
    <p>Cash <strong data-testid="cash">${dollars(p.cash_cents)}</strong>
       &middot; Total value <strong>${dollars(p.total_value_cents)}</strong>
       &middot; XP <strong>${p.xp}</strong> (level ${p.level})</p>
    <table><thead><tr><th>Ticker</th><th>Shares</th><th>Price</th><th>Value</th><th>P/L</th><th></th></tr></thead>
    <tbody>${rows || `<tr><td colspan="6" class="empty">No positions</td></tr>`}</tbody></table>
  </section>`;
}

export function renderMarket(state: ViewState): string {
  const m = state.market;
  if (!m) return `<p class="empty">Loading market&hellip;</p>`;
  const rows = m.stocks
    .map((s) => {
      const dir = s.change_cents > 0 ? "gain" : s.change_cents < 0 ? "loss" : "";
      const status = s.delisted ? ` <span class="delisted">delisted</span>` : "";
      return `<tr data-stock-row="${esc(s.stock_id)}">
        <td><a href="#/stock/${esc(s.stock_id)}" data-stock="${esc(s.stock_id)}">${esc(s.ticker)}</a></td>
        <td>${esc(s.name)}${status}</td><td>${esc(s.sector)}</td>
        <td>${dollars(s.price_cents)}</td>
        <td class="${dir}">${s.change_cents >= 0 ? "+" : ""}${(s.change_cents / 100).toFixed(2)}</td>
      </tr>`;
    })
    .join("");
  return `<section class="market">
    <h2>Market &middot; week ${m.tick}</h2>
    <table><thead><tr><th>Ticker</th><th>Company</th><th>Sector</th><th>Price</th><th>Change</th></tr></thead>
    <tbody>${rows}</tbody></table>
  </section>`;
}

export function renderStockDetail(state: ViewState): string {
  const s = state.stock;
  if (!s) return `<p class="empty">Loading stock&hellip;</p>`;
  const held = state.portfolio?.positions.find((p) => p.stock_id === s.stock_id);
  return `<section class="stock-detail">
    <h2>${esc(s.name)} (${esc(s.ticker)})</h2>
    <p>${esc(s.sector)} &middot; ${dollars(s.price_cents)}
       ${s.delisted ? `<span class="delisted">delisted</span>` : ""}
       &middot; float ${s.float_shares.toLocaleString()} shares</p>
    ${priceChartSvg(s.price_history_cents)}
    <form class="trade-form" data-form="trade" data-stock="${esc(s.stock_id)}">
      <input name="shares" type="number" min="1" step="1" value="1" aria-label="shares" />
      <button type="submit" name="side" value="Buy">Buy</button>
      <button type="submit" name="side" value="Sell" ${held ? "" : "disabled"}>Sell</button>
    </form>
    <button class="report-fraud" data-action="report-fraud" data-stock="${esc(s.stock_id)}">
      Report as fraud</button>
  </section>`;
}

export function renderNews(state: ViewState): string {
  const n = state.news;
  if (!n) return `<p class="empty">Loading news&hellip;</p>`;
  const items = n.articles
    .slice()
    .sort((a, b) => b.publish_tick - a.publish_tick)
    .map((a) => {
      const open = state.readingArticleId === a.article_id;
      return `<article class="news-item trust-${a.source_trust.toLowerCase()}" data-article="${esc(a.article_id)}">
        <header>
          <span class="badge sentiment-${a.sentiment.toLowerCase()}">${a.sentiment}</span>
          <span class="badge trust">${a.source_trust} source</span>
          <span class="tick">week ${a.publish_tick}</span>
        </header>
        <h3><a href="#" data-action="${open ? "close-article" : "open-article"}" data-article="${esc(a.article_id)}">${esc(a.headline)}</a></h3>
        ${open ? `<p class="body">${esc(a.body)}</p>` : ""}
      </article>`;
    })
    .join("");
  return `<section class="news"><h2>News &middot; week ${n.tick}</h2>${items}</section>`;
}

export function renderAnalytics(state: ViewState): string {
  const a = state.analytics;
  if (!a) return `<p class="empty">Loading analytics&hellip;</p>`;
  const fp = a.footprint;
  const fmtSeconds = (v: unknown) => `${Math.round(Number(v ?? 0))}s`;
  return `<section class="analytics">
    <h2>Your session statistics</h2>
    <ul class="stats">
      <li>Time on market page: <strong>${fmtSeconds(fp.t_market_page)}</strong></li>
      <li>Time reading news: <strong>${fmtSeconds(
        Number(fp.t_read_positive_news ?? 0) + Number(fp.t_read_neutral_news ?? 0),
      )}</strong></li>
      <li>Articles read: <strong>${fp.n_articles_read ?? 0}</strong>
          (${fp.n_trusted_read ?? 0} trusted / ${fp.n_untrusted_read ?? 0} untrusted)</li>
      <li>Trades: <strong>${fp.n_transactions ?? 0}</strong></li>
      <li>Frauds reported: <strong>${fp.n_frauds_reported ?? 0}</strong></li>
    </ul>
  </section>`;
}

export function renderChat(state: ViewState): string {
  const c = state.chat;
  if (!c) return `<p class="empty">Loading chat&hellip;</p>`;
  const replied = new Map(state.chatLog.map((e) => [e.messageId, e.reply]));
  const items = c.messages
    .map((m) => {
      const reply = replied.get(m.message_id);
      const options =
        !reply && m.reply_options.length > 0
          ? `<div class="replies">${m.reply_options
              .map(
                (opt) =>
                  `<button data-action="chat-reply" data-message="${esc(m.message_id)}" data-reply="${esc(opt)}">${esc(opt)}</button>`,
              )
              .join("")}</div>`
          : "";
      const echo = reply ? `<p class="msg user"><em>You:</em> ${esc(reply)}</p>` : "";
      return `<div class="chat-entry author-${m.author.toLowerCase()}">
        <p class="msg"><strong>${m.author}:</strong> ${esc(m.text)}</p>${options}${echo}
      </div>`;
    })
    .join("");
  return `<section class="chat"><h2>Chat</h2>${items}</section>`;
}

export function renderPage(state: ViewState): string {
  switch (state.page) {
    case "portfolio":
      return renderPortfolio(state);
    case "market":
      return renderMarket(state);
    case "stock":
      return renderStockDetail(state);
    case "news":
      return renderNews(state);
    case "analytics":
      return renderAnalytics(state);
    case "chat":
      return renderChat(state);
  }
}

export function renderApp(state: ViewState): string {
  const banner = state.error
    ? `<div class="banner error" data-testid="error">${esc(state.error)}</div>`
    : state.notice
      ? `<div class="banner notice" data-testid="notice">${esc(state.notice)}</div>`
      : "";
  return `${renderNav(state)}${banner}<main>${renderPage(state)}</main>${renderFeedbackPanel(state)}`;
}
