/**
 * Shapes of the JSON documents served by the analysis backend.
 * These mirror the report schema exactly; the UI never invents fields.
 */

export interface SpanJson {
  sl: number;
  sc: number;
  el: number;
  ec: number;
}

export type NodeKind = "component" | "state" | "prop" | "effect";
export type EdgeKind = "renders" | "prop_flow" | "effect_dep" | "effect_set";
export type Confidence = "Definite" | "Suspect";

export interface NodeJson {
  id: string;
  kind: NodeKind;
  name: string;
  file: string;
  span: SpanJson;
  parent_component: string | null;
  flags: string[];
}

export interface EdgeJson {
  id: string;
  kind: EdgeKind;
  from: string;
  to: string;
  label?: string;
  site?: SpanJson;
}

export interface FindingJson {
  id: string;
  kind: string;
  confidence: Confidence;
  node_ids: string[];
  spans: SpanJson[];
  message: string;
}

export interface DiagnosticJson {
  code: string;
  file: string;
  span: SpanJson;
  component: string | null;
  message: string;
}

export interface MetricsJson {
  jsx_file_count: number;
  component_count: number;
  total_loc: number;
  anti_pattern_counts: Record<string, number>;
}

export interface ReportJson {
  schema_version: string;
  generated_from: { root: string; digest: string };
  metrics: MetricsJson;
  graph: { nodes: NodeJson[]; edges: EdgeJson[] };
  findings: FindingJson[];
  diagnostics: DiagnosticJson[];
}

export interface SourceJson {
  path: string;
  content: string;
  line_count: number;
}
