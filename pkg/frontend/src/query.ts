// Query page: run retrieval checks, list ranked matches, and show each
// result's meaning list with the predicates that matched the query
// highlighted.

import { Api, QueryResult, ServiceError } from "./api.js";
import { renderMeaning } from "./meaningView.js";

export class QueryPage {
  constructor(
    private readonly root: HTMLElement,
    private readonly api: Api,
    private readonly doc: Document,
  ) {}

  load(): void {
    this.root.innerHTML = `
      <form class="query-form">
        <input type="text" name="q" placeholder="missile mounted on aircraft">
        <button type="submit">search</button>
        <span class="validation"></span>
      </form>
      <div class="query-error"></div>
      <ul class="results"></ul>
      <div class="result-detail"></div>`;
    const form = this.root.querySelector(".query-form") as HTMLFormElement;
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submit();
    });
  }

  private select(selector: string): HTMLElement {
    return this.root.querySelector(selector) as HTMLElement;
  }

  get input(): HTMLInputElement {
    return this.root.querySelector("input[name=q]") as HTMLInputElement;
  }

  async submit(): Promise<void> {
    const text = this.input.value.trim();
    const validation = this.select(".validation");
    const errorArea = this.select(".query-error");
    const list = this.select(".results");
    this.select(".result-detail").innerHTML = "";
    errorArea.textContent = "";
    if (!text) {
      validation.textContent = "enter a query first";
      return; // no request for empty input
    }
    validation.textContent = "";
    let results: QueryResult[];
    try {
      results = (await this.api.query(text)).results;
    } catch (err) {
      if (err instanceof ServiceError && err.status === 422) {
        errorArea.textContent = `cannot parse query: ${err.diagnostic}`;
      } else {
        errorArea.textContent =
          err instanceof Error ? err.message : String(err);
      }
      return;
    }
    list.innerHTML = "";
    if (results.length === 0) {
      const empty = this.doc.createElement("li");
      empty.className = "empty-state";
      empty.textContent = "no captions match this query";
      list.appendChild(empty);
      return;
    }
    for (const result of results) {
      const item = this.doc.createElement("li");
      item.className = "result";
      item.dataset["captionId"] = result.captionId;
      const id = this.doc.createElement("span");
      id.className = "result-id";
      id.textContent = result.captionId;
      const caption = this.doc.createElement("span");
      caption.className = "result-text";
      caption.textContent = result.text;
      const score = this.doc.createElement("span");
      score.className = "result-score";
      score.textContent = result.bestScore.toFixed(3);
      item.append(id, caption, score);
      item.addEventListener("click", () => this.showDetail(result));
      list.appendChild(item);
    }
  }

  showDetail(result: QueryResult): void {
    const detail = this.select(".result-detail");
    detail.innerHTML = "";
    const heading = this.doc.createElement("h3");
    heading.textContent = `${result.captionId}: ${result.text}`;
    detail.appendChild(heading);
    const matched = new Set(result.matchedPredicates);
    const interpretation =
      result.interpretations[result.matchedInterpretation];
    if (interpretation) {
      detail.appendChild(renderMeaning(interpretation, this.doc, matched));
    }
  }
}
