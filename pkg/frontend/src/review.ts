// Review page: show the current proposal, let the monitor accept, reject
// (advancing to the next-best parse) or skip; refresh stats after every
// action. The proposal's version token is echoed on mutations so a stale
// view can never act.

import { Api, ProposalPayload, ServiceError } from "./api.js";
import { parseBracket } from "./bracket.js";
import { renderMeaning } from "./meaningView.js";
import { renderTree } from "./treeView.js";

export class ReviewPage {
  private current: ProposalPayload | null = null;
  private busy = false;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: Api,
    private readonly doc: Document,
  ) {}

  async load(): Promise<void> {
    this.renderSkeleton();
    await this.refreshProposal();
    await this.refreshStats();
  }

  private renderSkeleton(): void {
    this.root.innerHTML = `
      <div class="notice-area"></div>
      <div class="stats-bar">
        <span data-stat="reviewed">reviewed 0</span>
        <span data-stat="accuracy">first-try accuracy n/a</span>
        <span data-stat="pairs">pairs 0</span>
      </div>
      <div class="proposal">
        <div class="caption-line">
          <span class="caption-id"></span>
          <span class="caption-text"></span>
        </div>
        <div class="rank-line">
          <span class="rank"></span>
          <span class="proposal-score"></span>
        </div>
        <div class="tree-area"></div>
        <div class="meaning-area"></div>
      </div>
      <div class="actions">
        <button data-action="accept">accept (a)</button>
        <button data-action="reject">reject (r)</button>
        <button data-action="skip">skip (s)</button>
      </div>`;
    this.button("accept").addEventListener("click", () => {
      void this.act("accept");
    });
    this.button("reject").addEventListener("click", () => {
      void this.act("reject");
    });
    this.button("skip").addEventListener("click", () => {
      void this.act("skip");
    });
  }

  handleKey(key: string): void {
    if (key === "a") void this.act("accept");
    else if (key === "r") void this.act("reject");
    else if (key === "s") void this.act("skip");
  }

  private button(action: string): HTMLButtonElement {
    return this.root.querySelector(
      `button[data-action="${action}"]`,
    ) as HTMLButtonElement;
  }

  private select(selector: string): HTMLElement {
    return this.root.querySelector(selector) as HTMLElement;
  }

  private async refreshProposal(): Promise<void> {
    try {
      this.current = await this.api.sessionNext();
    } catch (err) {
      this.current = null;
      if (err instanceof ServiceError && err.status === 409) {
        this.select(".proposal").innerHTML =
          '<p class="empty-state">corpus exhausted: nothing to review</p>';
        return;
      }
      this.notify(describeError(err));
      return;
    }
    const proposal = this.current;
    this.select(".caption-id").textContent = proposal.captionId;
    this.select(".caption-text").textContent = proposal.captionText;
    this.select(".rank").textContent =
      `rank ${proposal.rank} of ${proposal.totalCandidates}`;
    this.select(".proposal-score").textContent =
      `score ${proposal.score.toFixed(4)}`;
    const treeArea = this.select(".tree-area");
    treeArea.innerHTML = "";
    treeArea.appendChild(renderTree(parseBracket(proposal.tree), this.doc));
    const meaningArea = this.select(".meaning-area");
    meaningArea.innerHTML = "";
    meaningArea.appendChild(renderMeaning(proposal.meaning, this.doc));
  }

  private async refreshStats(): Promise<void> {
    try {
      const stats = await this.api.stats();
      const session = stats.session;
      this.select('[data-stat="reviewed"]').textContent =
        `reviewed ${session ? session.reviewed : 0}`;
      this.select('[data-stat="accuracy"]').textContent = session
        ? `first-try accuracy ${(session.firstTryAccuracy * 100).toFixed(1)}%`
        : "first-try accuracy n/a";
      this.select('[data-stat="pairs"]').textContent =
        `pairs ${stats.store.pairEntries}`;
    } catch {
      // stats are advisory; leave the last values in place
    }
  }

  private async act(action: "accept" | "reject" | "skip"): Promise<void> {
    if (this.busy || !this.current) return;
    this.busy = true;
    try {
      const version = this.current.version;
      if (action === "accept") await this.api.sessionAccept(version);
      else if (action === "reject") await this.api.sessionReject(version);
      else await this.api.sessionSkip(version);
      await this.refreshProposal();
      await this.refreshStats();
    } catch (err) {
      // 409/422 render as dismissible notices; the session is untouched
      this.notify(describeError(err));
    } finally {
      this.busy = false;
    }
  }

  private notify(message: string): void {
    const area = this.select(".notice-area");
    const notice = this.doc.createElement("div");
    notice.className = "notice";
    const text = this.doc.createElement("span");
    text.textContent = message;
    const dismiss = this.doc.createElement("button");
    dismiss.className = "dismiss";
    dismiss.textContent = "dismiss";
    dismiss.addEventListener("click", () => notice.remove());
    notice.append(text, dismiss);
    area.appendChild(notice);
  }
}

function describeError(err: unknown): string {
  if (err instanceof ServiceError) {
    return `${err.status}: ${err.diagnostic}`;
  }
  return err instanceof Error ? err.message : String(err);
}
