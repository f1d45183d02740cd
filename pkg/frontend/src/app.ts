// Browser shell: fetch -> render -> act -> re-fetch.
// State is whatever the service last returned plus the checkbox selection;
// every mutation is followed by a full re-fetch (no optimistic updates).

import { ApiError, CurationApi } from './api.js';
import {
  componentDetailView,
  componentListView,
  exportFilename,
  noyauDetailView,
} from './views.js';

const api = new CurationApi('');
const selection = new Set<number>();

function el(id: string): HTMLElement {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found;
}

function showError(err: unknown): void {
  const box = el('errors');
  box.textContent = err instanceof ApiError ? `service error ${err.status}: ${err.message}` : String(err);
  box.classList.remove('hidden');
}

function clearError(): void {
  el('errors').classList.add('hidden');
}

async function refresh(): Promise<void> {
  clearError();
  try {
    const list = await api.listComponents();
    el('components').innerHTML = componentListView(list, selection);
  } catch (err) {
    showError(err);
  }
}

async function openNoyau(id: number): Promise<void> {
  try {
    el('detail').innerHTML = noyauDetailView(await api.noyauDetail(id));
  } catch (err) {
    showError(err);
  }
}

async function openComponent(id: number): Promise<void> {
  try {
    el('detail').innerHTML = componentDetailView(await api.componentDetail(id));
  } catch (err) {
    showError(err);
  }
}

async function mergeSelection(): Promise<void> {
  if (selection.size === 0) {
    showError(new Error('select at least one noyau first'));
    return;
  }
  const label = (el('merge-label') as HTMLInputElement).value.trim();
  if (!label) {
    showError(new Error('a merge needs a label'));
    return;
  }
  try {
    await api.merge([...selection], label);
    selection.clear();
    (el('merge-label') as HTMLInputElement).value = '';
    await refresh();
  } catch (err) {
    showError(err);
  }
}

async function downloadExport(): Promise<void> {
  try {
    const groups = await api.exportClassification();
    const blob = new Blob([JSON.stringify(groups, null, 1)], { type: 'application/json' });
    const link = document.createElement('a');
    link.href = URL.createObjectURL(blob);
    link.download = exportFilename(new Date());
    link.click();
    URL.revokeObjectURL(link.href);
  } catch (err) {
    showError(err);
  }
}

function wire(): void {
  el('components').addEventListener('click', (event) => {
    const target = event.target as HTMLElement;
    const openNoyauId = target.getAttribute('data-open-noyau');
    if (openNoyauId !== null) {
      event.preventDefault();
      void openNoyau(Number(openNoyauId));
      return;
    }
    const status = target.getAttribute('data-status');
    if (status !== null) {
      const component = Number(target.getAttribute('data-target'));
      void api
        .setStatus(component, status as 'pending' | 'validated' | 'invalidated')
        .then(refresh)
        .catch(showError);
      return;
    }
    const select = target.getAttribute('data-select');
    if (select !== null) {
      const id = Number(select);
      if ((target as HTMLInputElement).checked) selection.add(id);
      else selection.delete(id);
      return;
    }
    const section = target.closest('section[data-component]');
    if (section && target.tagName === 'H2') {
      void openComponent(Number(section.getAttribute('data-component')));
    }
  });
  el('merge-button').addEventListener('click', () => void mergeSelection());
  el('export-button').addEventListener('click', () => void downloadExport());
  el('refresh-button').addEventListener('click', () => void refresh());
}

wire();
void refresh();
