import { ApiError, StudyApi } from "./api.js";
import {
  buyerPortalTemplate,
  confirmationTemplate,
  resellerPortalTemplate,
  roleSelectTemplate,
} from "./portal.js";
import type { Choice, Role, SessionOffer } from "./types.js";

export class App {
  private inFlight = false;
  private submitted = false;

  constructor(private root: HTMLElement, private api: StudyApi) {}

  async start(): Promise<void> {
    this.root.innerHTML = roleSelectTemplate();
    if (!(await this.api.health())) {
      this.roleBanner("The study service is unreachable.", true);
      return; // role buttons stay disabled until a retry succeeds
    }
    this.root.querySelectorAll<HTMLButtonElement>("button.role").forEach(btn => {
      btn.disabled = false;
      btn.addEventListener("click", () => {
        void this.pickRole(btn.dataset.role as Role);
      });
    });
  }

  private roleBanner(message: string, withRetry: boolean): void {
    const banner = this.root.querySelector<HTMLElement>("#role-banner");
    if (!banner) return;
    banner.classList.remove("hidden");
    banner.textContent = message + " ";
    if (withRetry) {
      const retry = document.createElement("button");
      retry.id = "retry";
      retry.textContent = "Retry";
      retry.addEventListener("click", () => void this.start());
      banner.appendChild(retry);
    }
  }

  private async pickRole(role: Role): Promise<void> {
    this.root
      .querySelectorAll<HTMLButtonElement>("button.role")
      .forEach(btn => (btn.disabled = true));
    try {
      this.renderOffer(await this.api.openSession(role));
    } catch {
      this.roleBanner("The study service is unreachable.", true);
    }
  }

  private renderOffer(offer: SessionOffer): void {
    this.submitted = false;
    this.root.innerHTML =
      offer.role === "buyer"
        ? buyerPortalTemplate(offer)
        : resellerPortalTemplate(offer);
    this.root
      .querySelectorAll<HTMLButtonElement>("button.choice")
      .forEach(btn => {
        btn.addEventListener("click", () => {
          void this.choose(offer, btn.dataset.choice as Choice);
        });
      });
  }

  private setChoicesDisabled(disabled: boolean): void {
    this.root
      .querySelectorAll<HTMLButtonElement>("button.choice")
      .forEach(btn => (btn.disabled = disabled));
  }

  private portalBanner(message: string): void {
    const banner = this.root.querySelector<HTMLElement>("#portal-banner");
    if (banner) {
      banner.classList.remove("hidden");
      banner.textContent = message;
    }
  }

  private async choose(offer: SessionOffer, choice: Choice): Promise<void> {
    if (this.inFlight || this.submitted) return;
    this.inFlight = true;
    this.setChoicesDisabled(true); // one decision per session
    try {
      const ack = await this.api.submitDecision(offer.session_id, choice);
      this.submitted = true;
      this.root.innerHTML = confirmationTemplate(ack.choice);
    } catch (err) {
      if (err instanceof ApiError && (err.status === 404 || err.status === 409)) {
        this.portalBanner("This session has expired; fetching a fresh offer.");
        try {
          this.renderOffer(await this.api.openSession(offer.role));
          this.portalBanner("Your previous session expired; this is a fresh offer.");
        } catch {
          this.portalBanner("The study service is unreachable.");
        }
      } else if (err instanceof ApiError) {
        this.portalBanner(`Internal error: ${err.message}`);
        this.setChoicesDisabled(false);
      } else {
        this.portalBanner("Could not reach the study service; nothing was recorded.");
        this.setChoicesDisabled(false);
      }
    } finally {
      this.inFlight = false;
    }
  }
}

declare global {
  interface Window {
    EML_API_BASE?: string;
  }
}

const rootEl =
  typeof document !== "undefined" ? document.getElementById("app") : null;
if (rootEl) {
  void new App(rootEl, new StudyApi(window.EML_API_BASE ?? "")).start();
}
