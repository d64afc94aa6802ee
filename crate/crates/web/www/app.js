import init, { analyze, holomorph, verifyTheorems } from "./pkg/loopforge_web.js";

const SAMPLES = {
  "C3": "3\n0 1 2\n1 2 0\n2 0 1",
  "Klein four": "4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0",
  "C5": "5\n0 1 2 3 4\n1 2 3 4 0\n2 3 4 0 1\n3 4 0 1 2\n4 0 1 2 3",
  "order-5 loop, exponent 2": "5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0",
  "S3": "6\n0 1 2 3 4 5\n1 0 3 2 5 4\n2 4 0 5 1 3\n3 5 1 4 0 2\n4 2 5 0 3 1\n5 3 4 1 2 0",
};

const THEOREMS = ["all", "T3.1", "C3.2", "C3.3", "T3.3.1", "T3.4", "C3.5", "C3.6", "T3.3.2", "C_FINAL", "OSBORN", "HUTHNANCE"];

const $ = (id) => document.getElementById(id);
const out = $("output");

function el(tag, attrs = {}, ...children) {
  const e = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  for (const c of children) e.append(c);
  return e;
}

// one hue per element, spread around the wheel
function color(x, n) {
  return `hsl(${Math.round((360 * x) / n)}, 70%, 80%)`;
}

function grid(rows, labels) {
  const n = rows.length;
  const t = el("table", { class: n > 12 ? "cayley small" : "cayley" });
  const head = el("tr", {}, el("th", {}, "·"));
  rows.forEach((_, y) => head.append(el("th", { title: labels ? labels[y] : y }, String(y))));
  t.append(head);
  rows.forEach((row, x) => {
    const tr = el("tr", {}, el("th", { title: labels ? labels[x] : x }, String(x)));
    row.forEach((v) => {
      const td = el("td", { title: labels ? labels[v] : v }, String(v));
      td.style.background = color(v, n);
      tr.append(td);
    });
    t.append(tr);
  });
  return t;
}

function tags(entries) {
  const d = el("div", { class: "tags" });
  for (const [name, ok] of entries) d.append(el("span", { class: ok ? "yes" : "no" }, name));
  return d;
}

function run(fn) {
  $("error").textContent = "";
  out.replaceChildren();
  try {
    fn($("table").value);
  } catch (e) {
    $("error").textContent = String(e);
  }
}

function showAnalysis(text) {
  const r = JSON.parse(analyze(text));
  out.append(el("h2", {}, `Order ${r.order}`), grid(r.rows));
  const dl = el("dl");
  const row = (k, v) => dl.append(el("dt", {}, k), el("dd", {}, v));
  row("identity", r.identity ?? "none");
  if (r.aum_order !== undefined) {
    row("|AUM|", String(r.aum_order));
    for (const [k, v] of Object.entries(r.nuclei)) row(k, `{${v.join(",")}}`);
    const groups = r.smarandache.s_subgroups.map((g) => `{${g}}`).join(" ");
    row("S-subgroups", groups || "none");
  }
  out.append(dl, el("h3", {}, "Properties"));
  out.append(tags(Object.entries(r.properties).map(([k, v]) => [k, v.holds])));
  if (r.smarandache) {
    out.append(el("h3", {}, "Smarandache classes"));
    out.append(tags(Object.values(r.smarandache.per_property).map((c) => [c.class, c.holds])));
  }
}

function showHolomorph(text) {
  const r = JSON.parse(holomorph(text));
  out.append(el("h2", {}, `H(L): order ${r.order} = ${r.aum_order} × ${r.order / r.aum_order}`));
  out.append(tags([["AIP", r.aip], ["CIP", r.cip]]));
  out.append(grid(r.rows, r.labels));
  const list = el("ul");
  r.automorphisms.forEach((a, i) => list.append(el("li", {}, `a${i} = [${a.join(",")}]`)));
  out.append(el("p", {}, "Element i·n + x is the pair (a_i, x); hover a cell for its label."), list);
}

function showVerify(text) {
  const reports = JSON.parse(verifyTheorems(text, $("theorem").value));
  for (const r of reports) {
    const box = el("div", { class: "report" });
    box.append(
      el("strong", {}, `${r.theorem} `),
      el("span", { class: `verdict-${r.verdict}` }, r.verdict),
      ` (lhs ${r.lhs}, rhs ${r.rhs})`,
    );
    const ul = el("ul");
    for (const c of r.clauses) ul.append(el("li", { class: `verdict-${c.verdict}` }, `${c.name}: ${c.lhs} / ${c.rhs}`));
    for (const g of r.subgroups ?? []) {
      const bad = g.clauses.filter((c) => c.verdict === "inconsistent").length;
      ul.append(el("li", { class: bad ? "verdict-inconsistent" : "verdict-consistent" },
        `G = {${g.subgroup}}, |SAUM| = ${g.saum_order}: ${bad} inconsistent clause(s)`));
    }
    box.append(ul);
    out.append(box);
  }
}

await init();
for (const name of Object.keys(SAMPLES)) $("sample").append(el("option", { value: name }, name));
for (const id of THEOREMS) $("theorem").append(el("option", { value: id }, id));
$("sample").addEventListener("change", (e) => { $("table").value = SAMPLES[e.target.value]; });
$("table").value = SAMPLES["C3"];
$("analyze").addEventListener("click", () => run(showAnalysis));
$("holomorph").addEventListener("click", () => run(showHolomorph));
$("verify").addEventListener("click", () => run(showVerify));
run(showAnalysis);
