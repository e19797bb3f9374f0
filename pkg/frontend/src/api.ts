/**
 * Thin client for the analysis server. Every request goes through here;
 * nothing else in the UI touches the network.
 */

import { ReportJson, SourceJson } from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

async function getJson<T>(url: string): Promise<T> {
  const res = await fetch(url);
  if (!res.ok) {
    throw new ApiError(res.status, `GET ${url} failed with ${res.status}`);
  }
  return (await res.json()) as T;
}

export function fetchReport(base = ""): Promise<ReportJson> {
  return getJson<ReportJson>(`${base}/api/graph`);
}

export function fetchSource(file: string, base = ""): Promise<SourceJson> {
  return getJson<SourceJson>(
    `${base}/api/source?file=${encodeURIComponent(file)}`,
  );
}

export async function requestReanalyze(base = ""): Promise<void> {
  const res = await fetch(`${base}/api/reanalyze`, { method: "POST" });
  if (res.status !== 202) {
    throw new ApiError(res.status, `reanalyze rejected with ${res.status}`);
  }
  await res.json();
}
