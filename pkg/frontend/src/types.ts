// API payload shapes. The UI renders these verbatim; equivalence, relevance
// and series selection are all decided server-side.

export interface GraphNode {
  ordinal: number;
  label: string;
  createdBuild: string;
  origin: "initial" | "source_modification" | "anomaly_fork";
}

export interface Outcome {
  kind: "initial" | "unchanged" | "modified" | "fork" | "reverted";
  version: number;
  from?: number;
  label?: string;
}

export interface GraphStep {
  build: string;
  outcome: Outcome;
}

export interface MethodHistory {
  nodes: GraphNode[];
  steps: GraphStep[];
  openBranches: number[];
}

export interface GraphDoc {
  schema: number;
  methods: Record<string, MethodHistory>;
}

export interface EditAnnotation {
  category: string;
  violating: boolean;
}

export interface RegionLine {
  line: number | null;
  text: string;
  role: "label" | "instruction" | "group_break";
  annotations: EditAnnotation[];
}

export interface VerdictEdit {
  category: string;
  violating: boolean;
  sourceLine: number | null;
  targetLine: number | null;
  detail: string;
}

export interface AnomalyDoc {
  verdict: {
    section: string;
    sourceBuild: string;
    targetBuild: string;
    result: "equivalent" | "anomaly";
    edits: VerdictEdit[];
  };
  source: { build: string; lines: RegionLine[] };
  target: { build: string; lines: RegionLine[] };
}

export interface SeriesPoint {
  param: number | string;
  value: number;
  unit: string;
  build: string;
  version: number;
}

export interface Series {
  label: string;
  method: string;
  version: number | null;
  points: SeriesPoint[];
}

export interface ResultsDoc {
  metric: string;
  param: string;
  series: Series[];
}

export interface BuildReportDoc {
  build: string;
  outcomes: Record<string, Outcome>;
  anomalies: { section: string; from: number; version: number }[];
  anomaly: boolean;
}

export interface RunReportDoc {
  build: string;
  ingested: number;
  outcomes: Record<string, Outcome>;
}

export interface ApiError {
  error: string;
  detail: string;
}
