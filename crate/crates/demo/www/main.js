import init, { wire_graph, symmetry_scan, two_mode_class } from "./pkg/gnl_demo.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function fail(el, e) {
  el.innerHTML = "";
  const span = document.createElement("span");
  span.className = "error";
  span.textContent = String(e);
  el.appendChild(span);
}

function drawWire() {
  const out = $("w-out");
  const canvas = $("w-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  let g;
  try {
    g = JSON.parse(wire_graph(num("w-spins"), num("w-alpha")));
  } catch (e) {
    return fail(out, e);
  }
  const step = (canvas.width - 80) / g.spins;
  const pos = (m) => [50 + step * Math.floor(m / 2), m % 2 === 0 ? 70 : 170];
  for (const e of g.edges) {
    const [x1, y1] = pos(e.i);
    const [x2, y2] = pos(e.j);
    ctx.strokeStyle = e.re >= 0 ? "#1f4e9c" : "#d4a017";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(x1, y1);
    if (Math.abs(x2 - x1) > step * 1.5) {
      // wrap-around bond
      const top = (y1 + y2) / 2 < 120 ? 10 : 250;
      ctx.bezierCurveTo(x1, top, x2, top, x2, y2);
    } else {
      ctx.lineTo(x2, y2);
    }
    ctx.stroke();
  }
  ctx.font = "12px sans-serif";
  ctx.textAlign = "center";
  for (let m = 0; m < g.modes; m++) {
    const [x, y] = pos(m);
    ctx.fillStyle = "#fff";
    ctx.strokeStyle = "#333";
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.arc(x, y, 14, 0, 2 * Math.PI);
    ctx.fill();
    ctx.stroke();
    ctx.fillStyle = "#222";
    ctx.fillText(g.labels[m], x, y + 4);
  }
  out.textContent = g.nullifiers
    .map((n, i) => `N${i} = ${n.expression}   residual ${n.residual.toExponential(1)}`)
    .join("\n");
}

function drawScan() {
  const verdict = $("s-verdict");
  const canvas = $("s-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  let r;
  try {
    r = JSON.parse(symmetry_scan($("s-state").value, num("s-spins"), num("s-alpha"), $("s-gen").value, num("s-points")));
  } catch (e) {
    return fail(verdict, e);
  }
  verdict.innerHTML = "";
  const tag = document.createElement("span");
  tag.className = r.is_nullifier ? "pass" : "fail";
  tag.textContent = r.is_nullifier ? "nullifier" : "not a nullifier";
  verdict.append(tag, ` ${r.generator}   residual ${r.residual.toExponential(2)}`);

  // log10 deviation against θ, clamped to [-17, 1]
  const lo = -17, hi = 1;
  const x = (t) => 40 + (t / (2 * Math.PI)) * (canvas.width - 60);
  const y = (d) => {
    const l = Math.min(hi, Math.max(lo, Math.log10(Math.max(d, 1e-300))));
    return 10 + ((hi - l) / (hi - lo)) * (canvas.height - 40);
  };
  ctx.strokeStyle = "#ccc";
  ctx.fillStyle = "#666";
  ctx.font = "11px sans-serif";
  for (let e = lo + 1; e <= hi; e += 3) {
    ctx.beginPath();
    ctx.moveTo(40, y(10 ** e));
    ctx.lineTo(canvas.width - 20, y(10 ** e));
    ctx.stroke();
    ctx.fillText(`1e${e}`, 2, y(10 ** e) + 4);
  }
  ctx.fillText("θ: 0 … 2π", canvas.width / 2 - 20, canvas.height - 8);
  ctx.strokeStyle = "#e33";
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  ctx.moveTo(40, y(1e-9));
  ctx.lineTo(canvas.width - 20, y(1e-9));
  ctx.stroke();
  ctx.setLineDash([]);
  ctx.strokeStyle = r.is_nullifier ? "#070" : "#1f4e9c";
  ctx.lineWidth = 2;
  ctx.beginPath();
  r.thetas.forEach((t, i) => (i ? ctx.lineTo(x(t), y(r.deviations[i])) : ctx.moveTo(x(t), y(r.deviations[i]))));
  ctx.stroke();
}

function solveTwoMode() {
  const out = $("t-out");
  try {
    const c = JSON.parse(two_mode_class(num("t-a"), num("t-b"), num("t-g"), num("t-d")));
    const fmt = ([re, im]) => `${re.toFixed(6)}${im < 0 ? "-" : "+"}${Math.abs(im).toFixed(6)}i`;
    const rows = c.basis.map((v, i) => `v${i}: k11 = ${fmt(v[0])}, k12 = ${fmt(v[1])}, k22 = ${fmt(v[2])}`);
    out.textContent = [`M = ${c.generator}`, `dimension ${c.dimension}`, ...rows].join("\n");
  } catch (e) {
    fail(out, e);
  }
}

await init();
$("w-run").addEventListener("click", drawWire);
$("s-run").addEventListener("click", drawScan);
$("t-run").addEventListener("click", solveTwoMode);
drawWire();
drawScan();
solveTwoMode();
