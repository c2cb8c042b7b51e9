// Thin client for the planning service.

import type { EnvironmentData, PlanRequest, PlanResponse, RobotData } from "./types.js";

export class ServiceError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
  }
}

export class PlannerClient {
  constructor(readonly base: string) {}

  private async get<T>(path: string): Promise<T> {
    let resp: Response;
    try {
      resp = await fetch(this.base + path);
    } catch (e) {
      throw new ServiceError(`service unreachable at ${this.base}`);
    }
    if (!resp.ok) throw new ServiceError(await resp.text(), resp.status);
    return (await resp.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.get("/health");
  }

  environments(): Promise<string[]> {
    return this.get<{ environments: string[] }>("/environments").then((d) => d.environments);
  }

  robots(): Promise<string[]> {
    return this.get<{ robots: string[] }>("/robots").then((d) => d.robots);
  }

  async environmentGeometry(name: string): Promise<EnvironmentData> {
    // the service has no geometry endpoint; a zero-eps probe is rejected, so
    // fetch geometry through a cheap plan request instead? No: geometry ships
    // with the repo fixtures. Keep a local copy served as JSON next to the app.
    const resp = await fetch(`fixtures/env_${name}.json`);
    if (!resp.ok) throw new ServiceError(`no local geometry for ${name}`, resp.status);
    return (await resp.json()) as EnvironmentData;
  }

  async robotGeometry(name: string): Promise<RobotData> {
    const resp = await fetch(`fixtures/robot_${name}.json`);
    if (!resp.ok) throw new ServiceError(`no local geometry for ${name}`, resp.status);
    return (await resp.json()) as RobotData;
  }

  async plan(req: PlanRequest): Promise<PlanResponse> {
    let resp: Response;
    try {
      resp = await fetch(this.base + "/plan", {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(req),
      });
    } catch (e) {
      throw new ServiceError(`service unreachable at ${this.base}`);
    }
    const body = await resp.json().catch(() => ({}));
    if (!resp.ok) {
      throw new ServiceError((body as { error?: string }).error ?? `HTTP ${resp.status}`, resp.status);
    }
    return body as PlanResponse;
  }
}
