import type { Choice, DecisionAck, Role, SessionOffer } from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

async function errorDetail(res: Response): Promise<string> {
  try {
    const body = await res.json();
    if (body && typeof body.detail === "string") return body.detail;
  } catch {
    // non-JSON error body; fall through to the status line
  }
  return `${res.status} ${res.statusText}`;
}

export class StudyApi {
  constructor(readonly baseUrl: string = "") {}

  async health(): Promise<boolean> {
    try {
      const res = await fetch(`${this.baseUrl}/health`);
      return res.ok;
    } catch {
      return false;
    }
  }

  async openSession(role: Role): Promise<SessionOffer> {
    const res = await fetch(`${this.baseUrl}/session/${role}`);
    if (!res.ok) throw new ApiError(res.status, await errorDetail(res));
    return (await res.json()) as SessionOffer;
  }

  async submitDecision(sessionId: string, choice: Choice): Promise<DecisionAck> {
    const res = await fetch(`${this.baseUrl}/decision`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ session_id: sessionId, choice }),
    });
    if (!res.ok) throw new ApiError(res.status, await errorDetail(res));
    return (await res.json()) as DecisionAck;
  }
}
