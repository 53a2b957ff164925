import { ApiClient } from "./api.js";
import { debounce } from "./debounce.js";
import { ClosestPanel, SimilarityPanel } from "./panels.js";

declare global {
  interface Window {
    GRAPHVEC_API_BASE?: string;
  }
}

function el<K extends keyof HTMLElementTagNameMap>(tag: K, id: string): HTMLElementTagNameMap[K] {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as HTMLElementTagNameMap[K];
}

async function init(): Promise<void> {
  const client = new ApiClient(window.GRAPHVEC_API_BASE ?? "");

  const datasetSelects = [el<"select">("select", "sim-dataset"), el<"select">("select", "closest-dataset")];
  try {
    const health = await client.getHealth();
    for (const select of datasetSelects) {
      for (const name of health.datasets) {
        const option = document.createElement("option");
        option.value = name;
        option.textContent = name;
        select.appendChild(option);
      }
    }
  } catch {
    el<"div">("div", "sim-result").textContent = "server unreachable";
    return;
  }

  const simPanel = new SimilarityPanel(el<"div">("div", "sim-result"), client);
  const closestPanel = new ClosestPanel(el<"div">("div", "closest-result"), client);

  const runSimilarity = debounce(() => {
    const a = el<"input">("input", "sim-concept-1").value.trim();
    const b = el<"input">("input", "sim-concept-2").value.trim();
    if (a && b) void simPanel.query(datasetSelects[0].value, a, b);
  });
  const runClosest = debounce(() => {
    const term = el<"input">("input", "closest-concept").value.trim();
    const n = parseInt(el<"input">("input", "closest-n").value, 10) || 10;
    if (term) void closestPanel.query(datasetSelects[1].value, term, n);
  });

  for (const id of ["sim-concept-1", "sim-concept-2"]) {
    el<"input">("input", id).addEventListener("input", runSimilarity);
  }
  datasetSelects[0].addEventListener("change", runSimilarity);
  el<"input">("input", "closest-concept").addEventListener("input", runClosest);
  el<"input">("input", "closest-n").addEventListener("change", runClosest);
  datasetSelects[1].addEventListener("change", runClosest);
}

void init();
