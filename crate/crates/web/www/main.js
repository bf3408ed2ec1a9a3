import init, { newton, group, weil_check } from "./pkg/fourfold_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function badge(el, ok, text) {
  el.className = ok ? "pass" : "fail";
  el.textContent = text;
}

function svgEl(name, attrs) {
  const e = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  return e;
}

// Vertices are (i, v_p(c_i)); x runs over the degree, y over valuations.
function drawPolygon(svg, vertices, degree) {
  svg.replaceChildren();
  if (!vertices || vertices.length === 0) return;
  const w = +svg.getAttribute("width");
  const h = +svg.getAttribute("height");
  const pad = 30;
  const maxY = Math.max(1, ...vertices.map((v) => v[1]));
  const sx = (x) => pad + (x / Math.max(1, degree)) * (w - 2 * pad);
  const sy = (y) => h - pad - (y / maxY) * (h - 2 * pad);
  svg.append(svgEl("line", { x1: pad, y1: h - pad, x2: w - pad, y2: h - pad, stroke: "#888" }));
  svg.append(svgEl("line", { x1: pad, y1: pad, x2: pad, y2: h - pad, stroke: "#888" }));
  for (let i = 0; i <= degree; i++) {
    const t = svgEl("text", { x: sx(i), y: h - pad + 16, "text-anchor": "middle", "font-size": 11 });
    t.textContent = i;
    svg.append(t);
  }
  const top = svgEl("text", { x: pad - 6, y: sy(maxY) + 4, "text-anchor": "end", "font-size": 11 });
  top.textContent = maxY;
  svg.append(top);
  const pts = vertices.map(([x, y]) => `${sx(x)},${sy(y)}`).join(" ");
  svg.append(svgEl("polyline", { points: pts, fill: "none", stroke: "#1f5fbf", "stroke-width": 2 }));
  for (const [x, y] of vertices) {
    svg.append(svgEl("circle", { cx: sx(x), cy: sy(y), r: 3.5, fill: "#1f5fbf" }));
  }
}

function onNewton(ev) {
  ev?.preventDefault();
  const f = $("newton-form");
  const r = JSON.parse(newton(+f.q.value, f.poly.value, f.model.value));
  $("newton-out").textContent = JSON.stringify(r, null, 2);
  if (r.error) {
    badge($("newton-summary"), false, r.error);
    drawPolygon($("newton-plot"), [], 0);
    return;
  }
  drawPolygon($("newton-plot"), r.vertices, r.degree);
  if (r.shape.error) {
    badge($("newton-summary"), false, `p = ${r.p}: ${r.shape.error}`);
  } else {
    const s = r.shape;
    badge($("newton-summary"), true, `p = ${r.p}: e = ${s.e}, d = ${s.d}, g = ${s.g}, ${s.kind}`);
  }
}

function onGroup(ev) {
  ev?.preventDefault();
  const f = $("group-form");
  const r = JSON.parse(group(+f.m.value, +f.r.value));
  $("group-out").textContent = JSON.stringify(r, null, 2);
  if (r.error) return badge($("group-summary"), false, r.error);
  const v = r.verdict;
  const name = r.table.name ? ` ≅ ${r.table.name}, J = ${r.table.jordan.jordan_constant}` : "";
  badge($("group-summary"), v.embeddable,
    `${v.embeddable ? "embeddable" : "not embeddable"} (${v.branch}), order ${r.order}${name}`);
}

function onWeil(ev) {
  ev?.preventDefault();
  const f = $("weil-form");
  const r = JSON.parse(weil_check(+f.q.value, f.poly.value));
  $("weil-out").textContent = JSON.stringify(r, null, 2);
  if (r.error) return badge($("weil-summary"), false, r.error);
  badge($("weil-summary"), r.verdict.is_weil,
    `${r.verdict.is_weil ? "Weil" : "not Weil"}: ${r.verdict.reason}`);
}

await init();
$("newton-form").addEventListener("submit", onNewton);
$("group-form").addEventListener("submit", onGroup);
$("weil-form").addEventListener("submit", onWeil);
onNewton();
onGroup();
onWeil();
