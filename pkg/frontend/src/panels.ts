// Query panels: each renders only the response to its most recent
// request. A per-panel sequence number discards stale responses.

import { ApiClient } from "./api.js";

abstract class Panel {
  protected sequence = 0;
  pending = false;

  constructor(protected root: HTMLElement, protected client: ApiClient) {}

  protected nextRequest(): number {
    this.pending = true;
    return ++this.sequence;
  }

  protected isCurrent(id: number): boolean {
    return id === this.sequence;
  }

  protected finish(id: number): boolean {
    if (!this.isCurrent(id)) return false;
    this.pending = false;
    return true;
  }

  protected showError(message: string): void {
    this.root.innerHTML = "";
    const div = document.createElement("div");
    div.className = "error";
    div.textContent = message;
    this.root.appendChild(div);
  }
}

export class SimilarityPanel extends Panel {
  async query(dataset: string, concept1: string, concept2: string): Promise<void> {
    const id = this.nextRequest();
    try {
      const body = await this.client.getSimilarity(dataset, concept1, concept2);
      if (!this.finish(id)) return;
      this.root.innerHTML = "";
      const score = document.createElement("span");
      score.className = "score";
      score.textContent = body.similarity.toFixed(4);
      this.root.appendChild(score);
      if (body.oov) {
        const badge = document.createElement("span");
        badge.className = "badge oov";
        badge.textContent = "OOV";
        this.root.appendChild(badge);
      }
    } catch (err) {
      if (!this.finish(id)) return;
      this.showError(err instanceof Error ? err.message : String(err));
    }
  }
}

export class ClosestPanel extends Panel {
  async query(dataset: string, concept: string, topN: number): Promise<void> {
    const id = this.nextRequest();
    try {
      const body = await this.client.getClosestConcepts(dataset, topN, concept);
      if (!this.finish(id)) return;
      this.root.innerHTML = "";
      if (body.result.length === 0) {
        const notice = document.createElement("div");
        notice.className = "notice";
        notice.textContent = "no results";
        this.root.appendChild(notice);
        return;
      }
      const table = document.createElement("table");
      const thead = document.createElement("thead");
      const headRow = document.createElement("tr");
      for (const title of ["#", "concept", "score"]) {
        const th = document.createElement("th");
        th.textContent = title;
        headRow.appendChild(th);
      }
      thead.appendChild(headRow);
      table.appendChild(thead);
      const tbody = document.createElement("tbody");
      body.result.forEach((entry, i) => {
        const row = document.createElement("tr");
        for (const text of [String(i + 1), entry.concept, entry.score.toFixed(4)]) {
          const td = document.createElement("td");
          td.textContent = text;
          row.appendChild(td);
        }
        tbody.appendChild(row);
      });
      table.appendChild(tbody);
      this.root.appendChild(table);
    } catch (err) {
      if (!this.finish(id)) return;
      this.showError(err instanceof Error ? err.message : String(err));
    }
  }
}
