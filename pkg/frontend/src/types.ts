export type Role = "buyer" | "reseller";

// Wire values accepted by POST /decision.
export type BuyerChoice = "ONDEMAND" | "SHARING" | "NONE";
export type ResellerChoice = "Y" | "N";
export type Choice = BuyerChoice | ResellerChoice;

export interface BuyerOffer {
  role: "buyer";
  session_id: string;
  app_type: string;
  usage: number;
  u?: number; // omitted when the service hides private values
  market: { q_o: number; q_s: number; p_o: number; p_r: number };
  payoffs: { on_demand: number; sharing: number; none: number };
}

export interface ResellerOffer {
  role: "reseller";
  session_id: string;
  app_type: string;
  usage: number;
  g?: number;
  market: { p_r: number; delta: number };
  payoffs: { sell: number; no: number };
}

export type SessionOffer = BuyerOffer | ResellerOffer;

export interface DecisionAck {
  session_id: string;
  recorded: boolean;
  choice: string;
}
