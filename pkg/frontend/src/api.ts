import type {
  AnomalyDoc,
  ApiError,
  BuildReportDoc,
  GraphDoc,
  ResultsDoc,
  RunReportDoc,
} from "./types.js";

export class RequestFailed extends Error {
  status: number;
  body: ApiError;

  constructor(status: number, body: ApiError) {
    super(`${body.error}: ${body.detail}`);
    this.status = status;
    this.body = body;
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(path, init);
  const body = await resp.json();
  if (!resp.ok) {
    throw new RequestFailed(resp.status, body as ApiError);
  }
  return body as T;
}

export const api = {
  graph: () => request<GraphDoc>("/api/graph"),
  results: (metric: string, param: string) =>
    request<ResultsDoc>(
      `/api/results?metric=${encodeURIComponent(metric)}&param=${encodeURIComponent(param)}`,
    ),
  anomaly: (build: string, section: string) =>
    request<AnomalyDoc>(
      `/api/anomaly/${encodeURIComponent(build)}/${encodeURIComponent(section)}`,
    ),
  build: () => request<BuildReportDoc>("/api/build", { method: "POST" }),
  run: () => request<RunReportDoc>("/api/run", { method: "POST" }),
};
