// In-memory stand-in for the caption service, faithful to the endpoint
// contract: /session/next|accept|reject|skip with version tokens and 409s,
// /query with matched predicates, /stats with review counters. Payload
// shapes come from captures of the real service (payloads.ts).

import { fixtures } from "./payloads.js";

type Json = Record<string, unknown>;

interface FakeState {
  captionIndex: number;
  rank: number;
  reviewed: number;
  firstTry: number;
  requests: string[];
}

const PROPOSALS: Json[][] = [
  [fixtures.next_rank1 as unknown as Json, fixtures.next_rank2 as unknown as Json],
  [fixtures.next_after_accept as unknown as Json],
];

export function installFakeService(): FakeState {
  const state: FakeState = {
    captionIndex: 0,
    rank: 1,
    reviewed: 0,
    firstTry: 0,
    requests: [],
  };

  function version(): string {
    return `${state.captionIndex}:${state.rank}`;
  }

  function proposal(): Json | null {
    const ranks = PROPOSALS[state.captionIndex];
    if (!ranks) return null;
    const payload = ranks[Math.min(state.rank, ranks.length) - 1];
    return {
      ...(payload as Json),
      rank: state.rank,
      version: version(),
    };
  }

  function respond(status: number, body: Json): Response {
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  }

  function mutate(action: string, body: Json): Response {
    if (proposal() === null) {
      return respond(409, { error: "no outstanding proposal" });
    }
    const sent = body["version"];
    if (typeof sent === "string" && sent !== version()) {
      return respond(409, { error: `stale proposal version ${sent}` });
    }
    if (action === "accept") {
      state.reviewed += 1;
      if (state.rank === 1) state.firstTry += 1;
      state.captionIndex += 1;
      state.rank = 1;
    } else if (action === "reject") {
      state.rank += 1;
    } else {
      state.captionIndex += 1;
      state.rank = 1;
    }
    return respond(200, { schemaVersion: "1", ok: true, action });
  }

  globalThis.fetch = async (
    input: RequestInfo | URL,
    init?: RequestInit,
  ): Promise<Response> => {
    const url = String(input);
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    state.requests.push(path);
    const body: Json = init?.body ? JSON.parse(String(init.body)) : {};

    if (path === "/session/next") {
      const current = proposal();
      if (current === null) {
        return respond(409, { error: "corpus exhausted" });
      }
      return respond(200, current);
    }
    if (path.startsWith("/session/")) {
      return mutate(path.split("/")[2]!, body);
    }
    if (path === "/query") {
      const text = String(body["text"] ?? "");
      if (!text.trim()) {
        return respond(400, { error: "text must be nonempty" });
      }
      if (text === "on on on") {
        return respond(422, {
          error: "unparsable text",
          diagnostic: "no parse for tokens ['on', 'on', 'on']",
        });
      }
      if (text === "missile mounted on aircraft") {
        return respond(200, fixtures.query as unknown as Json);
      }
      return respond(200, { schemaVersion: "1", results: [] });
    }
    if (path === "/stats") {
      const base = fixtures.stats0 as unknown as Json;
      const store = base["store"] as Json;
      return respond(200, {
        schemaVersion: "1",
        store,
        session: {
          reviewed: state.reviewed,
          firstTryAccepted: state.firstTry,
          firstTryAccuracy: state.reviewed
            ? state.firstTry / state.reviewed
            : 0,
          cursor: state.captionIndex,
          corpusSize: PROPOSALS.length,
          exhausted: state.captionIndex >= PROPOSALS.length,
        },
      });
    }
    return respond(404, { error: `no route ${path}` });
  };

  return state;
}
