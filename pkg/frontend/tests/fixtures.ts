import type { BuyerOffer, ResellerOffer } from "../src/types.js";

// Payoffs are written as the raw products the service would compute, noise
// and all, so the display-side trimming is exercised.
export const buyerOffer: BuyerOffer = {
  role: "buyer",
  session_id: "b1f2e3d4c5b6a79880716253443526172",
  app_type: "Mobile Gaming",
  usage: 0.73,
  u: 0.6,
  market: { q_o: 0.6, q_s: 0.7, p_o: 0.15, p_r: 0.2 },
  payoffs: {
    on_demand: 0.6 * 0.6 - 0.15,
    sharing: 0.6 * 0.7 - 0.2,
    none: 0.0,
  },
};

export const resellerOffer: ResellerOffer = {
  role: "reseller",
  session_id: "a9b8c7d6e5f40313223344556677889900",
  app_type: "Distributed AI",
  usage: 0.4,
  g: 0.1,
  market: { p_r: 0.2, delta: 0.2 },
  payoffs: {
    sell: (1 - 0.2) * 0.2 - 0.1,
    no: 0.0,
  },
};
