// Typed client for the litgraph query service. The UI never computes scores
// or re-runs entity matching; everything shown comes from these payloads.

export interface NodeSummary {
  entity_id: string;
  category: string;
  canonical_name: string;
}

export interface CellLineListItem extends NodeSummary {
  synonyms: string[];
  n_partners: number;
}

export interface CellLineList {
  total: number;
  offset: number;
  limit: number;
  items: CellLineListItem[];
}

export interface Partner extends NodeSummary {
  corpus_score: number;
  n_evidence: number;
  predicate_heads: string[];
  has_location: boolean;
}

export interface PartnerGroup {
  category: string;
  partners: Partner[];
}

export interface CellLineSummary extends NodeSummary {
  synonyms: string[];
  groups: PartnerGroup[];
}

export interface ProfileBin {
  chromosome: string;
  start: number;
  end: number;
  gain_frequency: number;
  loss_frequency: number;
}

export interface ProfileMarker {
  entity_id: string;
  label: string;
  chromosome: string;
  start: number;
  end: number;
  corpus_score: number;
}

export interface Profile {
  cell_line_id: string;
  sample_count: number;
  bins: ProfileBin[];
  markers: ProfileMarker[];
}

// [char_start, char_end, entity_id]
export type Mark = [number, number, string];

export interface MarkedText {
  text: string;
  marks: Mark[];
}

export interface EvidenceRecord {
  doc_id: string;
  title: string;
  total: number;
  distance_score: number;
  triple_bonus: number;
  has_triple: boolean;
  sentence: MarkedText & { char_start: number; char_end: number };
  abstract: MarkedText;
}

export interface EvidenceResponse {
  cell_line: NodeSummary;
  partner: NodeSummary;
  records: EvidenceRecord[];
}

export interface Stats {
  number_of_abstracts: number;
  total_entity_matches: number;
  unique_entity_matches: number;
  unique_cell_lines: number;
  abstracts_per_cell_line: number;
  linked_entities_per_cell_line: number;
}

export interface Api {
  stats(): Promise<Stats>;
  searchCellLines(prefix: string, offset?: number, limit?: number): Promise<CellLineList>;
  cellLine(id: string): Promise<CellLineSummary>;
  profile(id: string, topK: number): Promise<Profile>;
  evidence(id: string, partnerId: string): Promise<EvidenceResponse>;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class HttpApi implements Api {
  constructor(private base: string = "") {}

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.base + path);
    const body = await response.json();
    if (!response.ok) {
      const message = body?.error?.message ?? response.statusText;
      throw new ApiError(response.status, message);
    }
    return body as T;
  }

  stats(): Promise<Stats> {
    return this.get("/api/stats");
  }

  searchCellLines(prefix: string, offset = 0, limit = 50): Promise<CellLineList> {
    const q = encodeURIComponent(prefix);
    return this.get(`/api/celllines?q=${q}&offset=${offset}&limit=${limit}`);
  }

  cellLine(id: string): Promise<CellLineSummary> {
    return this.get(`/api/celllines/${encodeURIComponent(id)}`);
  }

  profile(id: string, topK: number): Promise<Profile> {
    return this.get(`/api/celllines/${encodeURIComponent(id)}/profile?top_k=${topK}`);
  }

  evidence(id: string, partnerId: string): Promise<EvidenceResponse> {
    const line = encodeURIComponent(id);
    const partner = encodeURIComponent(partnerId);
    return this.get(`/api/celllines/${line}/evidence/${partner}`);
  }
}
