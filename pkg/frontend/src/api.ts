// Typed client for the curation service HTTP/JSON API.
// Works in the browser and under node (global fetch).

import type {
  ComponentDetail,
  ComponentList,
  ComponentStatus,
  ExportedGroup,
  MergeResponse,
  NoyauDetail,
  SizeDistribution,
  StatusResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const detail = (body as { error?: string }).error ?? response.statusText;
    throw new ApiError(response.status, detail);
  }
  return body as T;
}

export class CurationApi {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  listComponents(valence?: number): Promise<ComponentList> {
    const suffix = valence === undefined ? '' : `?valence=${valence}`;
    return request(this.url(`/components${suffix}`));
  }

  componentDetail(id: number): Promise<ComponentDetail> {
    return request(this.url(`/components/${id}`));
  }

  noyauDetail(id: number): Promise<NoyauDetail> {
    return request(this.url(`/noyaux/${id}`));
  }

  sizes(): Promise<SizeDistribution> {
    return request(this.url('/sizes'));
  }

  merge(noyauIds: number[], label: string): Promise<MergeResponse> {
    return request(this.url('/merge'), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ noyau_ids: noyauIds, label }),
    });
  }

  setStatus(componentId: number, status: ComponentStatus): Promise<StatusResponse> {
    return request(this.url('/status'), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ component_id: componentId, status }),
    });
  }

  exportClassification(validatedOnly = false): Promise<ExportedGroup[]> {
    const suffix = validatedOnly ? '?validated_only=true' : '';
    return request(this.url(`/export${suffix}`));
  }
}
