import init, {
  synth_cover, default_table_text, table_profile, embed, extract, analyze,
} from "./pkg/pyramid_stego_web.js";

const $ = (id) => document.getElementById(id);
let cover = null;
let stego = null;

function plotBars(canvas, series, colors) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const max = Math.max(1, ...series.flat());
  series.forEach((values, s) => {
    ctx.fillStyle = colors[s];
    const bw = w / values.length;
    values.forEach((v, i) => {
      const bh = (v / max) * (h - 4);
      ctx.fillRect(i * bw, h - bh, Math.max(bw, 1), bh);
    });
  });
}

function plotLines(canvas, series, colors) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  series.forEach((values, s) => {
    ctx.strokeStyle = colors[s];
    ctx.beginPath();
    values.forEach((v, i) => {
      const x = (i / Math.max(1, values.length - 1)) * w;
      const y = h - v * (h - 4) - 2;
      i ? ctx.lineTo(x, y) : ctx.moveTo(x, y);
    });
    ctx.stroke();
  });
}

function showError(el, e) {
  el.textContent = String(e.message ?? e);
  el.className = "err";
}

function refreshTable() {
  if (!cover) return;
  const out = $("capacity");
  try {
    const p = JSON.parse(table_profile($("table").value, cover, $("baseline").checked));
    const hist = p.histogram;
    const peak = Math.max(1, ...hist);
    // Depths (0..4) scaled to the histogram peak so both share one plot.
    plotBars($("depths"), [hist, p.depths.map((d) => (d / 4) * peak)], ["#cfd8e3", "rgba(200,60,40,0.55)"]);
    const c = p.capacity;
    out.className = "";
    out.textContent =
      `capacity ${c.gross_bits} bits, usable secret ${c.net_bytes} bytes ` +
      `(${c.net_percent.toFixed(2)}% of ${c.cover_file_bytes}-byte cover)`;
  } catch (e) {
    showError(out, e);
  }
}

function regenerate() {
  cover = synth_cover(
    Number($("bits").value), Number($("seconds").value), Number($("freq").value),
    Number($("amp").value) / 100, Number($("noise").value) / 100, 42,
  );
  $("cover-info").textContent = `synthetic cover: ${cover.length} bytes`;
  stego = null;
  $("extract").disabled = true;
  refreshTable();
}

function runEmbed() {
  const out = $("codec-out");
  try {
    stego = embed(cover, $("message").value, $("table").value, $("baseline").checked);
    out.className = "";
    out.textContent = `embedded ${new TextEncoder().encode($("message").value).length} bytes`;
    $("extract").disabled = false;
    const link = $("download");
    URL.revokeObjectURL(link.href);
    link.href = URL.createObjectURL(new Blob([stego], { type: "audio/wav" }));
    link.hidden = false;
    runAnalyze();
  } catch (e) {
    showError(out, e);
  }
}

function runExtract() {
  const out = $("codec-out");
  try {
    out.className = "";
    out.textContent = "extracted: " + extract(stego, $("table").value, $("baseline").checked);
  } catch (e) {
    showError(out, e);
  }
}

function runAnalyze() {
  if (!stego) return;
  const out = $("report");
  try {
    const r = JSON.parse(analyze(cover, stego, $("table").value, $("baseline").checked, Number($("frame").value)));
    const db = (v) => (typeof v === "number" ? v.toFixed(3) + " dB" : v);
    out.className = "";
    out.textContent =
      `MSE ${r.mse.toExponential(4)}   PSNR(255/MSE) ${db(r.psnr_eq2_db)}   ` +
      `PSNR(255²/MSE) ${db(r.psnr_standard_db)}\n` +
      `payload ${r.secret_bytes} bytes = ${r.payload_percent.toFixed(2)}% of cover, ` +
      `${r.modified_bytes} bytes modified`;
    plotBars($("hist"), [r.cover_histogram, r.stego_histogram], ["rgba(40,90,200,0.6)", "rgba(240,140,20,0.6)"]);
    plotLines($("zcr"), [r.cover_zcr, r.stego_zcr], ["#285ac8", "#f08c14"]);
  } catch (e) {
    showError(out, e);
  }
}

await init();
$("table").value = default_table_text();
for (const id of ["bits", "seconds", "freq", "amp", "noise"]) $(id).addEventListener("change", regenerate);
$("table").addEventListener("input", refreshTable);
$("baseline").addEventListener("change", refreshTable);
$("frame").addEventListener("change", runAnalyze);
$("embed").addEventListener("click", runEmbed);
$("extract").addEventListener("click", runExtract);
$("file").addEventListener("change", async (ev) => {
  const f = ev.target.files[0];
  if (!f) return;
  cover = new Uint8Array(await f.arrayBuffer());
  $("cover-info").textContent = `${f.name}: ${cover.length} bytes`;
  stego = null;
  $("extract").disabled = true;
  refreshTable();
});
regenerate();
