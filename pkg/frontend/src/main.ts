// Boot: two tabs (review, query), shared keyboard shortcuts.

import { api } from "./api.js";
import { QueryPage } from "./query.js";
import { ReviewPage } from "./review.js";

export function boot(doc: Document): {
  review: ReviewPage;
  query: QueryPage;
} {
  const reviewRoot = doc.getElementById("review-page") as HTMLElement;
  const queryRoot = doc.getElementById("query-page") as HTMLElement;
  const review = new ReviewPage(reviewRoot, api, doc);
  const query = new QueryPage(queryRoot, api, doc);

  for (const tab of Array.from(doc.querySelectorAll("[data-tab]"))) {
    tab.addEventListener("click", () => {
      const target = (tab as HTMLElement).dataset["tab"];
      reviewRoot.hidden = target !== "review";
      queryRoot.hidden = target !== "query";
    });
  }

  doc.addEventListener("keydown", (event) => {
    const key = (event as KeyboardEvent).key;
    const target = event.target as HTMLElement | null;
    if (target && target.tagName === "INPUT") return;
    if (!reviewRoot.hidden) review.handleKey(key);
  });

  query.load();
  void review.load();
  return { review, query };
}

declare global {
  interface Window {
    captionIrBooted?: boolean;
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined" &&
    document.getElementById("review-page") && !window.captionIrBooted) {
  window.captionIrBooted = true;
  boot(document);
}
