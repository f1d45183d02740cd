// Pure render functions: service payloads in, HTML strings out.
// No state, no fetching; the app layer re-renders after every re-fetch.

import type {
  ComponentDetail,
  ComponentList,
  ComponentSummary,
  NoyauDetail,
  NoyauSummary,
} from './types.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function termChips(noyau: NoyauSummary): string {
  return noyau.top_terms
    .map((t) => `<span class="term">${t.per_mille} ${escapeHtml(t.term)}</span>`)
    .join(' ');
}

export function noyauRow(noyau: NoyauSummary, selected: boolean): string {
  return (
    `<li class="noyau${selected ? ' selected' : ''}" data-noyau="${noyau.id}">` +
    `<input type="checkbox" data-select="${noyau.id}"${selected ? ' checked' : ''}>` +
    `<a href="#" data-open-noyau="${noyau.id}">${escapeHtml(noyau.doc_id)}</a>` +
    ` <span class="size">${noyau.size} doc${noyau.size === 1 ? '' : 's'}</span> ` +
    termChips(noyau) +
    `</li>`
  );
}

export function componentCard(component: ComponentSummary, selection: Set<number>): string {
  const rows = component.noyaux.map((n) => noyauRow(n, selection.has(n.id))).join('');
  return (
    `<section class="component status-${component.status}" data-component="${component.id}">` +
    `<header>` +
    `<h2>Component ${component.id}</h2>` +
    `<span class="count">${component.doc_count} documents</span>` +
    `<span class="status">${component.status}</span>` +
    `<button data-status="validated" data-target="${component.id}">validate</button>` +
    `<button data-status="invalidated" data-target="${component.id}">invalidate</button>` +
    `<button data-status="pending" data-target="${component.id}">reset</button>` +
    `</header>` +
    `<ul>${rows}</ul>` +
    `</section>`
  );
}

export function componentListView(list: ComponentList, selection: Set<number>): string {
  const cards = list.components.map((c) => componentCard(c, selection)).join('');
  return (
    `<p class="meta">valence ${list.valence} · ${list.components.length} components ` +
    `(descending document count)</p>` +
    cards
  );
}

export function componentDetailView(detail: ComponentDetail): string {
  const groups = detail.groups
    .map(
      (g) =>
        `<li><strong>${escapeHtml(g.label)}</strong> — noyaux ${g.noyau_ids.join(', ')}</li>`,
    )
    .join('');
  const supporting = detail.supporting_docs
    .map((d) => `<li>${escapeHtml(d.doc_id)} → ${d.heads.map(escapeHtml).join(' + ')}</li>`)
    .join('');
  return (
    `<h3>Component ${detail.id} (${detail.status}, ${detail.doc_count} documents)</h3>` +
    `<h4>Manual groups</h4><ul>${groups || '<li>none</li>'}</ul>` +
    `<h4>Linking documents</h4><ul>${supporting || '<li>none</li>'}</ul>`
  );
}

export function noyauDetailView(detail: NoyauDetail): string {
  const members = detail.members
    .map(
      (m) =>
        `<tr><td>${m.heads_count}</td><td>${escapeHtml(m.doc_id)}</td>` +
        `<td>${m.density.toFixed(4)}</td></tr>`,
    )
    .join('');
  const terms = detail.terms
    .map((t) => `<tr><td>${t.per_mille}</td><td>${escapeHtml(t.term)}</td></tr>`)
    .join('');
  return (
    `<h3>Noyau ${escapeHtml(detail.doc_id)} (component ${detail.component})</h3>` +
    `<div class="columns">` +
    `<table class="members"><thead><tr><th>heads</th><th>document</th><th>density</th>` +
    `</tr></thead><tbody>${members}</tbody></table>` +
    `<table class="terms"><thead><tr><th>‰</th><th>term</th></tr></thead>` +
    `<tbody>${terms}</tbody></table>` +
    `</div>`
  );
}

export function exportFilename(now: Date): string {
  const stamp = now.toISOString().slice(0, 19).replace(/[:T]/g, '-');
  return `classification-${stamp}.json`;
}
