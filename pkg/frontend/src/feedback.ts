/** Map a feedback bundle onto UI affordances.
 *
 * The points counter is always on; the badges shelf, leaderboard tab, quest
 * tracker and the other optional affordances appear only when the bundle
 * names their element.
 */

import type { FeedbackBundle } from "./types.js";

export interface UiToggles {
  points: boolean;
  badges: boolean;
  leaderboard: boolean;
  quests: boolean;
  contentUnlocking: boolean;
  teams: boolean;
  collections: boolean;
}

export function uiToggles(bundle: FeedbackBundle | null): UiToggles {
  const has = (name: string) => bundle !== null && bundle.elements.includes(name);
  return {
    points: true,
    badges: has("Badges"),
    leaderboard: has("Leaderboards"),
    quests: has("Quests"),
    contentUnlocking: has("ContentUnlocking"),
    teams: has("Teams"),
    collections: has("Collections"),
  };
}

/** Scam scenarios the platform should surface for this user. */
export function activeScams(bundle: FeedbackBundle | null): Set<string> {
  return new Set(bundle?.scams ?? []);
}

export function describeBundle(bundle: FeedbackBundle): string {
  const pct = Math.round(bundle.confidence * 100);
  return `${bundle.predicted_type} investor (${pct}% confidence), difficulty ${bundle.difficulty}`;
}
