import type { BuyerOffer, ResellerOffer } from "./types.js";

// All numbers come from the session offer; the UI never recomputes payoffs
// or re-samples values. fmt only trims float noise (inputs carry at most six
// decimals), so the rendered text equals the offered value.
export function fmt(v: number): string {
  return String(Number(v.toFixed(6)));
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function roleSelectTemplate(): string {
  return `
    <section id="role-select">
      <h1>Edge Resource Market</h1>
      <p>Choose your role for this session.</p>
      <div id="role-banner" class="banner hidden"></div>
      <div class="buttons">
        <button class="role" data-role="buyer" disabled>Buyer</button>
        <button class="role" data-role="reseller" disabled>Re-seller</button>
      </div>
    </section>
  `;
}

export function buyerPortalTemplate(offer: BuyerOffer): string {
  const m = offer.market;
  const p = offer.payoffs;
  const willing = offer.u === undefined ? "" : `
        <tr><th>Your utility per unit (willingness to pay)</th>
            <td id="field-u">${fmt(offer.u)}</td></tr>`;
  return `
    <section id="portal" data-role="buyer">
      <h1>Buyer portal</h1>
      <table class="facts">
        <tr><th>Your application</th><td id="field-app">${esc(offer.app_type)}</td></tr>
        <tr><th>Your usage demand this time-slot</th>
            <td id="field-usage">${fmt(offer.usage)}</td></tr>${willing}
        <tr><th>On-demand pool: supply / price</th>
            <td>${fmt(m.q_o)} / ${fmt(m.p_o)}</td></tr>
        <tr><th>Sharing pool: supply / price</th>
            <td>${fmt(m.q_s)} / ${fmt(m.p_r)}</td></tr>
      </table>
      <h2>Your payoff per option</h2>
      <table class="payoffs">
        <tr><th>On-Demand Pool</th><td id="payoff-on_demand">${fmt(p.on_demand)}</td></tr>
        <tr><th>Sharing Pool</th><td id="payoff-sharing">${fmt(p.sharing)}</td></tr>
        <tr><th>No purchase</th><td id="payoff-none">${fmt(p.none)}</td></tr>
      </table>
      <div id="portal-banner" class="banner hidden"></div>
      <div class="buttons">
        <button class="choice" data-choice="ONDEMAND">On-Demand Pool</button>
        <button class="choice" data-choice="SHARING">Sharing Pool</button>
        <button class="choice" data-choice="NONE">No purchase</button>
      </div>
    </section>
  `;
}

export function resellerPortalTemplate(offer: ResellerOffer): string {
  const m = offer.market;
  const p = offer.payoffs;
  const cost = offer.g === undefined ? "" : `
        <tr><th>Your inconvenience cost of re-selling</th>
            <td id="field-g">${fmt(offer.g)}</td></tr>`;
  return `
    <section id="portal" data-role="reseller">
      <h1>Re-seller portal</h1>
      <table class="facts">
        <tr><th>Your application</th><td id="field-app">${esc(offer.app_type)}</td></tr>
        <tr><th>Your remaining quota this time-slot</th>
            <td id="field-usage">${fmt(offer.usage)}</td></tr>${cost}
        <tr><th>Re-selling price</th><td>${fmt(m.p_r)}</td></tr>
        <tr><th>Platform commission</th><td>${fmt(m.delta)}</td></tr>
      </table>
      <h2>Your payoff per option</h2>
      <table class="payoffs">
        <tr><th>re-sell</th><td id="payoff-sell">${fmt(p.sell)}</td></tr>
        <tr><th>no</th><td id="payoff-no">${fmt(p.no)}</td></tr>
      </table>
      <div id="portal-banner" class="banner hidden"></div>
      <div class="buttons">
        <button class="choice" data-choice="Y">re-sell</button>
        <button class="choice" data-choice="N">no</button>
      </div>
    </section>
  `;
}

export function confirmationTemplate(choice: string): string {
  return `
    <section id="confirmation">
      <h1>Decision recorded</h1>
      <p>Your choice <strong id="recorded-choice">${esc(choice)}</strong>
         was stored. Thank you for taking part.</p>
    </section>
  `;
}
