// Typed client for the caption service JSON endpoints.

export interface PredicateRow {
  kind: "ako" | "prop" | "rel";
  variable?: string;
  synset?: string;
  label?: string;
  head?: string;
  dependent?: string;
}

export interface MeaningPayload {
  lines: string[];
  predicates: PredicateRow[];
}

export interface ProposalPayload {
  schemaVersion: string;
  captionId: string;
  captionText: string;
  rank: number;
  score: number;
  totalCandidates: number;
  tree: string;
  meaning: MeaningPayload;
  version: string;
}

export interface QueryResult {
  captionId: string;
  bindingCount: number;
  bestScore: number;
  text: string;
  matchedInterpretation: number;
  matchedPredicates: string[];
  interpretations: MeaningPayload[];
}

export interface StatsPayload {
  schemaVersion: string;
  store: { pairEntries: number; unaryEntries: number; totalInstances: number };
  session?: {
    reviewed: number;
    firstTryAccepted: number;
    firstTryAccuracy: number;
    cursor: number;
    corpusSize: number;
    exhausted: boolean;
  };
}

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly body: Record<string, unknown>,
  ) {
    super(
      typeof body["error"] === "string" ? (body["error"] as string)
        : `service error ${status}`,
    );
  }

  get diagnostic(): string {
    const diag = this.body["diagnostic"];
    return typeof diag === "string" ? diag : this.message;
  }
}

async function post<T>(path: string, payload: unknown): Promise<T> {
  const response = await fetch(path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
  });
  const body = (await response.json()) as Record<string, unknown>;
  if (!response.ok) {
    throw new ServiceError(response.status, body);
  }
  return body as T;
}

async function get<T>(path: string): Promise<T> {
  const response = await fetch(path);
  const body = (await response.json()) as Record<string, unknown>;
  if (!response.ok) {
    throw new ServiceError(response.status, body);
  }
  return body as T;
}

export const api = {
  sessionNext: () => get<ProposalPayload>("/session/next"),
  sessionAccept: (version: string) =>
    post<{ ok: boolean }>("/session/accept", { version }),
  sessionReject: (version: string) =>
    post<{ ok: boolean }>("/session/reject", { version }),
  sessionSkip: (version: string) =>
    post<{ ok: boolean }>("/session/skip", { version }),
  query: (text: string, k = 10) =>
    post<{ results: QueryResult[] }>("/query", { text, k }),
  stats: () => get<StatsPayload>("/stats"),
};

export type Api = typeof api;
