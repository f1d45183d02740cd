// Wire types mirroring the curation service payloads exactly.
// The UI never recomputes clustering quantities; it renders these as-is.

export interface TermSummary {
  term: string;
  per_mille: number;
}

export interface NoyauSummary {
  id: number;
  doc_id: string;
  size: number;
  top_terms: TermSummary[];
}

export type ComponentStatus = 'pending' | 'validated' | 'invalidated';

export interface ComponentSummary {
  id: number;
  status: ComponentStatus;
  doc_count: number;
  noyaux: NoyauSummary[];
}

export interface ComponentList {
  valence: number;
  components: ComponentSummary[];
}

export interface ManualGroup {
  label: string;
  noyau_ids: number[];
}

export interface SupportingDoc {
  doc_id: string;
  heads: string[];
}

export interface ComponentDetail extends ComponentSummary {
  groups: ManualGroup[];
  supporting_docs: SupportingDoc[];
}

export interface NoyauMember {
  doc_id: string;
  density: number;
  heads_count: number;
}

export interface NoyauTerm {
  term: string;
  contribution: number;
  per_mille: number;
}

export interface NoyauDetail {
  id: number;
  doc_id: string;
  component: number;
  members: NoyauMember[];
  terms: NoyauTerm[];
  report: string;
}

export interface SizeDistribution {
  sizes: [number, number][];
}

export interface ExportedGroup {
  label: string;
  doc_ids: string[];
}

export interface MergeResponse {
  ok: boolean;
  label: string;
  noyau_ids: number[];
  component: number;
}

export interface StatusResponse {
  ok: boolean;
  component: number;
  status: ComponentStatus;
}
