// Demo page wiring. Three wasm calls are exposed: demo_simulate,
// demo_analyze and demo_join_betti; everything else is presentation.

import init, { demo_simulate, demo_analyze, demo_join_betti } from './pkg/concurtop_wasm.js';

const $ = (id) => document.getElementById(id);

const DIM_COLORS = ['#6c757d', '#2d6a4f', '#b08968', '#9d4edd', '#bc4749', '#386fa4'];

function groupNames(prefix, k) {
  return Array.from({ length: k }, (_, i) => `${prefix}${i}`).join(',');
}

function errorText(e) {
  return typeof e === 'string' ? e : (e && e.message) || String(e);
}

function runSimulation() {
  const k = Number($('k').value);
  const rows = Number($('rows').value);
  const seed = Number($('seed').value);
  const lambda = Number($('lambda').value);
  const verdict = $('verdict');
  const errorBox = $('simulate-error');
  errorBox.textContent = '';
  verdict.textContent = '';
  verdict.className = 'verdict';
  $('barcode').hidden = true;

  let csv, report;
  try {
    csv = demo_simulate(k, rows, seed, lambda);
    report = JSON.parse(demo_analyze(csv, groupNames('A', k), groupNames('B', k), 'all'));
  } catch (e) {
    errorBox.textContent = errorText(e);
    $('csv-preview').textContent = '';
    $('report-preview').textContent = '';
    return;
  }

  $('csv-preview').textContent = csv;
  $('report-preview').textContent = JSON.stringify(report, null, 2);

  const targetDim = 2 * (k - 2) + 1;
  const frameOne = report.frames.find((f) => f.frame === 1);
  const rank = frameOne ? (frameOne.inclusion_ranks[targetDim] ?? 0) : 0;
  const spans = report.frequency_lifespans[targetDim] ?? [];
  if (rank >= 1) {
    const reach = spans.length ? spans[spans.length - 1][1] : 1;
    verdict.classList.add('yes');
    verdict.innerHTML =
      `<strong>possible independence</strong>: a dimension-${targetDim} class ` +
      `survives into the join at frame 1 (it persists up to frame ${reach}).`;
  } else {
    verdict.classList.add('no');
    verdict.innerHTML =
      `<strong>no independence signature</strong>: nothing survives in ` +
      `dimension ${targetDim} at frame 1.`;
  }
  drawBarcode(report);
}

function drawBarcode(report) {
  const lifespans = Object.entries(report.frequency_lifespans)
    .map(([dim, spans]) => [Number(dim), spans])
    .sort((a, b) => a[0] - b[0]);
  const canvas = $('barcode');
  if (!lifespans.length) {
    canvas.hidden = true;
    return;
  }
  const maxFrame = report.summary.max_frame;
  const rowHeight = 26;
  const left = 64;
  const width = canvas.width;
  canvas.height = lifespans.length * rowHeight + 30;
  canvas.hidden = false;
  const ctx = canvas.getContext('2d');
  ctx.clearRect(0, 0, width, canvas.height);
  ctx.font = '13px ui-monospace, monospace';

  const x = (frame) => left + ((frame - 1) / Math.max(maxFrame - 1, 1)) * (width - left - 12);
  lifespans.forEach(([dim, spans], row) => {
    const y = 12 + row * rowHeight;
    ctx.fillStyle = '#1c2431';
    ctx.fillText(`dim ${dim}`, 8, y + 12);
    ctx.fillStyle = DIM_COLORS[dim % DIM_COLORS.length];
    for (const [lo, hi] of spans) {
      const start = x(lo);
      const end = Math.max(x(hi), start + 3);
      ctx.fillRect(start, y, end - start, 14);
    }
  });
  ctx.fillStyle = '#4a5468';
  const ticks = maxFrame > 1 ? [1, Math.ceil(maxFrame / 2), maxFrame] : [1];
  for (const f of [...new Set(ticks)]) {
    ctx.fillText(String(f), x(f) - 4, canvas.height - 6);
  }
  ctx.fillText('frame (minimum concurrence count)', left, canvas.height - 6 - 0);
}

function runJoin() {
  const errorBox = $('join-error');
  const badge = $('join-badge');
  const result = $('join-result');
  errorBox.textContent = '';
  badge.textContent = '';
  badge.className = '';
  result.innerHTML = '';

  let out;
  try {
    out = JSON.parse(demo_join_betti($('complex-k').value, $('complex-l').value));
  } catch (e) {
    errorBox.textContent = errorText(e);
    return;
  }

  const rows = [
    ['K', out.betti_k],
    ['L', out.betti_l],
    ['K ∗ L (computed)', out.betti_join],
    ['K ∗ L (predicted)', out.kunneth_prediction],
  ];
  const dims = Math.max(...rows.map(([, v]) => v.length));
  const header = ['', ...Array.from({ length: dims }, (_, d) => `β${d}`)];
  const table = document.createElement('table');
  table.innerHTML =
    `<tr>${header.map((h) => `<th>${h}</th>`).join('')}</tr>` +
    rows
      .map(([label, v]) => {
        const cells = Array.from({ length: dims }, (_, d) => v[d] ?? 0);
        return `<tr><th>${label}</th>${cells.map((c) => `<td>${c}</td>`).join('')}</tr>`;
      })
      .join('');
  result.appendChild(table);
  badge.textContent = out.matches ? 'prediction matches' : 'prediction mismatch';
  badge.className = `badge ${out.matches ? 'ok' : 'bad'}`;
}

const HOLLOW_TRIANGLE = JSON.stringify(
  { vertices: ['a', 'b', 'c'], facets: [['a', 'b'], ['b', 'c'], ['a', 'c']] },
  null,
  2,
);

async function main() {
  await init();
  $('complex-k').value = HOLLOW_TRIANGLE;
  $('complex-l').value = HOLLOW_TRIANGLE;
  $('lambda').addEventListener('input', () => {
    $('lambda-label').textContent = Number($('lambda').value).toFixed(2);
  });
  $('run-simulate').addEventListener('click', runSimulation);
  $('run-join').addEventListener('click', runJoin);
  runSimulation();
  runJoin();
}

main().catch((e) => {
  $('simulate-error').textContent =
    `failed to load the wasm module (${errorText(e)}); build it with crates/wasm/build-demo.sh`;
});
