import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api";
import { ClosestPanel, SimilarityPanel } from "../src/panels";

afterEach(() => vi.unstubAllGlobals());

function jsonResponse(body: unknown, ok = true, status = 200) {
  return { ok, status, statusText: ok ? "OK" : "Error", json: async () => body };
}

function panelRoot(): HTMLElement {
  const root = document.createElement("div");
  document.body.appendChild(root);
  return root;
}

describe("SimilarityPanel", () => {
  it("renders the JSON score verbatim to 4 decimals", async () => {
    vi.stubGlobal("fetch", vi.fn(async () =>
      jsonResponse({ dataset: "d", concept_1: "a", concept_2: "b", similarity: 0.123456 })
    ));
    const root = panelRoot();
    const panel = new SimilarityPanel(root, new ApiClient());
    await panel.query("d", "a", "b");
    expect(root.querySelector(".score")?.textContent).toBe("0.1235");
    expect(root.querySelector(".badge.oov")).toBeNull();
  });

  it("renders 1.0000 for an identical in-vocabulary term", async () => {
    vi.stubGlobal("fetch", vi.fn(async () =>
      jsonResponse({ dataset: "d", concept_1: "a", concept_2: "a", similarity: 1.0 })
    ));
    const root = panelRoot();
    await new SimilarityPanel(root, new ApiClient()).query("d", "a", "a");
    expect(root.querySelector(".score")?.textContent).toBe("1.0000");
  });

  it("shows an OOV badge with 0.0000", async () => {
    vi.stubGlobal("fetch", vi.fn(async () =>
      jsonResponse({ dataset: "d", concept_1: "a", concept_2: "zzz", similarity: 0, oov: true })
    ));
    const root = panelRoot();
    await new SimilarityPanel(root, new ApiClient()).query("d", "a", "zzz");
    expect(root.querySelector(".score")?.textContent).toBe("0.0000");
    expect(root.querySelector(".badge.oov")?.textContent).toBe("OOV");
  });

  it("renders an inline error on 404 without throwing", async () => {
    vi.stubGlobal("fetch", vi.fn(async () =>
      jsonResponse({ error: "unknown dataset" }, false, 404)
    ));
    const root = panelRoot();
    await new SimilarityPanel(root, new ApiClient()).query("nope", "a", "b");
    expect(root.querySelector(".error")?.textContent).toBe("unknown dataset");
  });

  it("renders an inline error on network failure", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => {
      throw new Error("network down");
    }));
    const root = panelRoot();
    await new SimilarityPanel(root, new ApiClient()).query("d", "a", "b");
    expect(root.querySelector(".error")?.textContent).toBe("network down");
  });

  it("never renders a stale response", async () => {
    let resolveFirst!: (v: unknown) => void;
    const first = new Promise((resolve) => (resolveFirst = resolve));
    const fetchMock = vi
      .fn()
      .mockImplementationOnce(() => first)
      .mockImplementationOnce(async () =>
        jsonResponse({ dataset: "d", concept_1: "a", concept_2: "c", similarity: 0.9 })
      );
    vi.stubGlobal("fetch", fetchMock);
    const root = panelRoot();
    const panel = new SimilarityPanel(root, new ApiClient());
    const q1 = panel.query("d", "a", "b");
    const q2 = panel.query("d", "a", "c");
    await q2;
    expect(root.querySelector(".score")?.textContent).toBe("0.9000");
    // the superseded request completes later with a different score
    resolveFirst(jsonResponse({ dataset: "d", concept_1: "a", concept_2: "b", similarity: 0.1 }));
    await q1;
    expect(root.querySelector(".score")?.textContent).toBe("0.9000");
  });
});

describe("ClosestPanel", () => {
  const rows = [
    { concept: "Berlin", score: 0.91 },
    { concept: "Hamburg", score: 0.85 },
    { concept: "Munich", score: 0.8 },
  ];

  it("renders all rows in response order", async () => {
    vi.stubGlobal("fetch", vi.fn(async () =>
      jsonResponse({ dataset: "d", concept: "Germany", result: rows })
    ));
    const root = panelRoot();
    await new ClosestPanel(root, new ApiClient()).query("d", "Germany", 3);
    const cells = [...root.querySelectorAll("tbody tr")].map((tr) =>
      [...tr.querySelectorAll("td")].map((td) => td.textContent)
    );
    expect(cells).toEqual([
      ["1", "Berlin", "0.9100"],
      ["2", "Hamburg", "0.8500"],
      ["3", "Munich", "0.8000"],
    ]);
  });

  it("shows a notice for an empty (OOV) result", async () => {
    vi.stubGlobal("fetch", vi.fn(async () =>
      jsonResponse({ dataset: "d", concept: "zzz", result: [] })
    ));
    const root = panelRoot();
    await new ClosestPanel(root, new ApiClient()).query("d", "zzz", 10);
    expect(root.querySelector(".notice")?.textContent).toBe("no results");
    expect(root.querySelector("table")).toBeNull();
  });

  it("renders an inline error on failure", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => jsonResponse({ error: "top_n must be in 1..100" }, false, 400)));
    const root = panelRoot();
    await new ClosestPanel(root, new ApiClient()).query("d", "Germany", 0);
    expect(root.querySelector(".error")?.textContent).toContain("top_n");
  });
});
