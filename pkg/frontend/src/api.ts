// Thin typed client for the embedding REST API.

export interface SimilarityResponse {
  dataset: string;
  concept_1: string;
  concept_2: string;
  similarity: number;
  oov?: boolean;
}

export interface ClosestEntry {
  concept: string;
  score: number;
}

export interface ClosestResponse {
  dataset: string;
  concept: string;
  result: ClosestEntry[];
}

export interface HealthResponse {
  status: string;
  datasets: string[];
  vocab_sizes: Record<string, number>;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const res = await fetch(url);
  if (!res.ok) {
    let detail = res.statusText;
    try {
      const body = await res.json();
      if (body && body.error) detail = body.error;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(res.status, detail);
  }
  return res.json() as Promise<T>;
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  getHealth(): Promise<HealthResponse> {
    return getJson(`${this.baseUrl}/health`);
  }

  getSimilarity(dataset: string, concept1: string, concept2: string): Promise<SimilarityResponse> {
    const url =
      `${this.baseUrl}/rest/get-similarity/${encodeURIComponent(dataset)}` +
      `/${encodeURIComponent(concept1)}/${encodeURIComponent(concept2)}`;
    return getJson(url);
  }

  getClosestConcepts(dataset: string, topN: number, concept: string): Promise<ClosestResponse> {
    const url =
      `${this.baseUrl}/rest/closest-concepts/${encodeURIComponent(dataset)}` +
      `/${topN}/${encodeURIComponent(concept)}`;
    return getJson(url);
  }
}
