import { describe, expect, it } from "vitest";

import { activeScams, uiToggles } from "../src/feedback.js";
import { priceChartSvg } from "../src/chart.js";
import { initialState, type ViewState } from "../src/state.js";
import { renderApp, renderChat, renderNav, renderNews, renderStockDetail } from "../src/views.js";
import type { FeedbackBundle } from "../src/types.js";

function bundle(elements: string[], scams: string[] = []): FeedbackBundle {
  return {
    session_id: "s1",
    predicted_type: "Novice",
    confidence: 0.9,
    elements,
    scams,
    difficulty: "Easy",
  };
}

function fixtureState(patch: Partial<ViewState> = {}): ViewState {
  return {
    ...initialState(),
    portfolio: {
      session_id: "s1",
      tick: 3,
      cash_cents: 1_900_000,
      cash: 19000,
      xp: 150,
      level: 1,
      positions: [
        {
          stock_id: "s05",
          ticker: "GLDR",
          shares: 100,
          cost_basis_cents: 8200,
          price_cents: 95,
          value_cents: 9500,
        },
      ],
      total_value_cents: 1_909_500,
    },
    ...patch,
  };
}

describe("feedback toggles", () => {
  it("points counter is always on", () => {
    expect(uiToggles(null).points).toBe(true);
    expect(uiToggles(bundle([])).points).toBe(true);
  });

  it("leaderboard tab hidden without Leaderboards", () => {
    const state = fixtureState({ feedback: bundle(["Points", "Badges"]) });
    expect(renderNav(state)).not.toContain("Leaderboard");
    const withBoard = fixtureState({ feedback: bundle(["Leaderboards"]) });
    expect(renderNav(withBoard)).toContain("Leaderboard");
  });

  it("quest tracker only with Quests in the bundle", () => {
    const withQuests = renderApp(fixtureState({ feedback: bundle(["Quests"]) }));
    expect(withQuests).toContain("quest-tracker");
    const without = renderApp(fixtureState({ feedback: bundle(["Points"]) }));
    expect(without).not.toContain("quest-tracker");
  });

  it("badges shelf toggled by the bundle", () => {
    expect(renderApp(fixtureState({ feedback: bundle(["Badges"]) }))).toContain("badges-shelf");
    expect(renderApp(fixtureState({ feedback: null }))).not.toContain("badges-shelf");
  });

  it("bundle scams drive trap content selection", () => {
    expect(activeScams(bundle([], ["PennyStockPumpAndDump"])).has("PennyStockPumpAndDump")).toBe(true);
    expect(activeScams(null).size).toBe(0);
  });

  it("rendering is a pure function: same state, same html", () => {
    const state = fixtureState({ feedback: bundle(["Quests", "Badges"]) });
    expect(renderApp(state)).toBe(renderApp(state));
  });
});

describe("views", () => {
  it("portfolio shows cash and positions", () => {
    const html = renderApp(fixtureState({ page: "portfolio" }));
    expect(html).toContain("$19000.00");
    expect(html).toContain("GLDR");
    expect(html).toContain("XP 150");
  });

  it("stock detail renders a 52-week chart and trade controls", () => {
    const history = Array.from({ length: 53 }, (_, i) => 100 + i);
    const state = fixtureState({
      page: "stock",
      stockId: "s05",
      stock: {
        stock_id: "s05",
        ticker: "GLDR",
        name: "Golden Reef Mining",
        sector: "Mining",
        float_shares: 24_000_000,
        tick: 52,
        price_cents: 152,
        price: 1.52,
        delisted: false,
        price_history_cents: history,
      },
    });
    const html = renderStockDetail(state);
    expect(html).toContain("<polyline");
    expect(html).toContain('data-form="trade"');
    expect(html).toContain("Report as fraud");
    const points = html.match(/points="([^"]+)"/)![1].trim().split(" ");
    expect(points).toHaveLength(53);
  });

  it("news marks sentiment and source trust", () => {
    const state = fixtureState({
      page: "news",
      news: {
        tick: 20,
        articles: [
          {
            article_id: "a1",
            stock_id: "s05",
            headline: "GLDR set to explode <1000%>",
            body: "Act now!",
            sentiment: "Positive",
            source_trust: "Untrusted",
            publish_tick: 15,
          },
        ],
      },
    });
    const html = renderNews(state);
    expect(html).toContain("Untrusted source");
    expect(html).toContain("sentiment-positive");
    expect(html).toContain("&lt;1000%&gt;"); // html-escaped headline
  });

  it("chat renders scripted reply options and echoes chosen replies", () => {
    const state = fixtureState({
      page: "chat",
      chat: {
        tick: 5,
        messages: [
          {
            message_id: "c00",
            author: "Mascot",
            text: "Welcome!",
            publish_tick: 0,
            reply_options: ["Show me the market", "How do I earn XP?"],
          },
          {
            message_id: "c03",
            author: "Recruiter",
            text: "Want in?",
            publish_tick: 4,
            reply_options: [],
          },
        ],
      },
      chatLog: [{ messageId: "c00", reply: "Show me the market" }],
    });
    const html = renderChat(state);
    expect(html).toContain("author-recruiter");
    expect(html).toContain("<em>You:</em> Show me the market");
    expect(html).not.toContain('data-message="c00"'); // already answered
  });

  it("error banner renders human-readable message", () => {
    const html = renderApp(fixtureState({ error: "Not enough cash for that trade." }));
    expect(html).toContain("Not enough cash");
  });
});

describe("price chart", () => {
  it("handles flat and empty histories", () => {
    expect(priceChartSvg([])).toContain("<svg");
    const flat = priceChartSvg([500, 500, 500]);
    expect(flat).toContain("<polyline");
  });

  it("shows the latest price as a label", () => {
    expect(priceChartSvg([100, 250])).toContain("$2.50");
  });
});
