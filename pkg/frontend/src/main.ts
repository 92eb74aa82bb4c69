/** Browser entry point: session bootstrap, hash routing, event wiring. */

import { ApiClient, ApiClientError } from "./api.js";
import { Store, applySessionCreated, type Page } from "./state.js";
import { Telemetry, systemClock } from "./telemetry.js";
import { renderApp } from "./views.js";
import type { ArticleRow } from "./types.js";

const FEEDBACK_POLL_MS = 15_000;
const FLUSH_MS = 5_000;

function currentRoute(): { page: Page; stockId: string | null } {
  const hash = window.location.hash.replace(/^#\//, "");
  const [head, arg] = hash.split("/");
  if (head === "stock" && arg) return { page: "stock", stockId: arg };
  const pages: Page[] = ["portfolio", "market", "news", "analytics", "chat"];
  return { page: pages.includes(head as Page) ? (head as Page) : "market", stockId: null };
}

export async function boot(root: HTMLElement): Promise<void> {
  const api = new ApiClient("");
  const store = new Store();
  const ageRaw = window.prompt("Your age?", "25") ?? "25";
  const age = Math.max(1, Math.min(129, parseInt(ageRaw, 10) || 25));
  const created = await api.createSession(age);
  applySessionCreated(store, created);
  const sessionId = created.session.session_id;
  const telemetry = new Telemetry(api, sessionId, systemClock);

  let articleOpen: ArticleRow | null = null;

  const refreshers: Record<Page, () => Promise<void>> = {
    market: async () => store.update({ market: await api.market() }),
    portfolio: async () => store.update({ portfolio: await api.portfolio(sessionId) }),
    news: async () => store.update({ news: await api.news() }),
    analytics: async () => {
      await telemetry.flush().catch(() => undefined);
      store.update({ analytics: await api.analytics(sessionId) });
    },
    chat: async () => store.update({ chat: await api.chat() }),
    stock: async () => {
      const id = store.getState().stockId;
      if (id) store.update({ stock: await api.stock(id) });
    },
  };

  function closeOpenArticle(): void {
    if (articleOpen) {
      telemetry.readEnd(articleOpen);
      articleOpen = null;
      store.update({ readingArticleId: null });
    }
  }

  async function navigate(): Promise<void> {
    const prev = store.getState();
    closeOpenArticle();
    telemetry.pageLeave(prev.page, prev.stockId ?? undefined);
    const { page, stockId } = currentRoute();
    store.update({ page, stockId, notice: null, error: null });
    telemetry.pageEnter(page, stockId ?? undefined);
    try {
      await refreshers[page]();
    } catch (err) {
      store.update({ error: humanError(err) });
    }
  }

  function humanError(err: unknown): string {
    if (err instanceof ApiClientError) {
      if (err.code === "InsufficientFunds") return "Not enough cash for that trade.";
      if (err.code === "InsufficientShares") return "You do not hold that many shares.";
      if (err.code === "StockDelisted") return "That listing is gone. The company never existed.";
      return err.message;
    }
    return String(err);
  }

  root.addEventListener("click", (event) => {
    const el = (event.target as HTMLElement).closest("[data-action]") as HTMLElement | null;
    if (!el) return;
    const action = el.dataset.action;
    if (action === "open-article" || action === "close-article") {
      event.preventDefault();
      const id = el.dataset.article!;
      const article = store.getState().news?.articles.find((a) => a.article_id === id);
      if (!article) return;
      closeOpenArticle();
      if (action === "open-article") {
        telemetry.readStart(article);
        articleOpen = article;
        store.update({ readingArticleId: id });
      }
    } else if (action === "report-fraud") {
      const stockId = el.dataset.stock!;
      api
        .reportFraud(sessionId, stockId)
        .then((res) => {
          store.update({
            portfolio: res.portfolio,
            notice: res.correct
              ? `Good catch! +${res.xp_delta} XP.`
              : `That listing checks out. ${res.xp_delta} XP.`,
          });
          return api.feedback(sessionId).then((fb) => store.update({ feedback: fb }));
        })
        .catch((err) => store.update({ error: humanError(err) }));
    } else if (action === "chat-reply") {
      const messageId = el.dataset.message!;
      const reply = el.dataset.reply!;
      telemetry.chatReply(messageId, reply);
      store.update({ chatLog: [...store.getState().chatLog, { messageId, reply }] });
    } else if (action === "sell") {
      const stockId = el.dataset.stock!;
      const shares = parseInt(el.dataset.shares ?? "0", 10);
      if (shares > 0) {
        api
          .trade(sessionId, stockId, "Sell", shares)
          .then((res) => store.update({ portfolio: res.portfolio, notice: "Sold." }))
          .catch((err) => store.update({ error: humanError(err) }));
      }
    }
  });

  root.addEventListener("submit", (event) => {
    const form = event.target as HTMLFormElement;
    if (form.dataset.form !== "trade") return;
    event.preventDefault();
    const stockId = form.dataset.stock!;
    const side = ((event as SubmitEvent).submitter as HTMLButtonElement).value as "Buy" | "Sell";
    const shares = parseInt((form.elements.namedItem("shares") as HTMLInputElement).value, 10);
    if (!Number.isInteger(shares) || shares < 1) {
      store.update({ error: "Shares must be a positive whole number." });
      return;
    }
    const cash = store.getState().portfolio?.cash_cents ?? 0;
    const price = store.getState().stock?.price_cents ?? 0;
    if (side === "Buy" && shares * price > cash) {
      store.update({ error: "Not enough cash for that trade." });
      return;
    }
    api
      .trade(sessionId, stockId, side, shares)
      .then((res) =>
        store.update({
          portfolio: res.portfolio,
          notice: `${side === "Buy" ? "Bought" : "Sold"} ${shares} share(s).`,
        }),
      )
      .catch((err) => store.update({ error: humanError(err) }));
  });

  store.subscribe((state) => {
    root.innerHTML = renderApp(state);
  });

  window.addEventListener("hashchange", () => void navigate());
  window.addEventListener("beforeunload", () => {
    closeOpenArticle();
    telemetry.pageLeave(store.getState().page, store.getState().stockId ?? undefined);
    void telemetry.flush().catch(() => undefined);
  });

  window.setInterval(() => {
    if (telemetry.pendingCount() > 0) void telemetry.flush().catch(() => undefined);
  }, FLUSH_MS);
  window.setInterval(() => {
    api
      .feedback(sessionId)
      .then((fb) => store.update({ feedback: fb }))
      .catch(() => undefined);
  }, FEEDBACK_POLL_MS);

  telemetry.pageEnter(currentRoute().page, currentRoute().stockId ?? undefined);
  store.update(currentRoute());
  await refreshers[store.getState().page]();
  api
    .feedback(sessionId)
    .then((fb) => store.update({ feedback: fb }))
    .catch(() => undefined);
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void boot(document.getElementById("app")!);
}
