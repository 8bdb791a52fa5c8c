import init, { decide_sequent, structure, evaluate, catalog } from "./pkg/sasaki_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function show(el, text, isError = false) {
  el.textContent = text;
  el.classList.toggle("err", isError);
}

function describeDecision(d) {
  if (d.result === "proved") {
    return `proved without T (rules ${d.rule_trace.join(" ")})\n\n${d.tree}`;
  }
  if (d.result === "refuted") {
    const val = Object.entries(d.valuation).map(([a, e]) => `${a} = ${e}`).join(", ");
    return `refuted in ${d.model} with ${val}\nleft side is ${d.lhs_value}, right side is ${d.rhs_value}`;
  }
  const models = d.models.map((m) => `  ${m.model}: ${m.valuations} valuations`).join("\n");
  return `unknown: no proof without T (${d.nodes} goals) and no countermodel in\n${models}`;
}

function decide() {
  try {
    show($("decide-out"), describeDecision(JSON.parse(decide_sequent($("decide-input").value))));
  } catch (e) {
    show($("decide-out"), String(e.message ?? e), true);
  }
}

function drawHasse(s) {
  const svg = $("hasse");
  svg.replaceChildren();
  const width = +svg.getAttribute("width");
  const height = +svg.getAttribute("height");
  const levels = new Map();
  s.elements.forEach((e, i) => {
    if (!levels.has(e.height)) levels.set(e.height, []);
    levels.get(e.height).push(i);
  });
  const top = Math.max(...levels.keys());
  const pos = [];
  for (const [h, members] of levels) {
    members.forEach((i, k) => {
      pos[i] = {
        x: ((k + 1) * width) / (members.length + 1),
        y: height - 30 - (top === 0 ? 0 : (h * (height - 60)) / top),
      };
    });
  }
  for (const [lo, hi] of s.covers) {
    const line = document.createElementNS(SVG, "line");
    line.setAttribute("x1", pos[lo].x);
    line.setAttribute("y1", pos[lo].y);
    line.setAttribute("x2", pos[hi].x);
    line.setAttribute("y2", pos[hi].y);
    line.setAttribute("stroke", "#888");
    svg.append(line);
  }
  s.elements.forEach((e, i) => {
    const dot = document.createElementNS(SVG, "circle");
    dot.setAttribute("cx", pos[i].x);
    dot.setAttribute("cy", pos[i].y);
    dot.setAttribute("r", 5);
    dot.setAttribute("fill", "#336");
    const label = document.createElementNS(SVG, "text");
    label.setAttribute("x", pos[i].x + 8);
    label.setAttribute("y", pos[i].y - 6);
    label.textContent = e.name;
    const title = document.createElementNS(SVG, "title");
    title.textContent = `${e.name}' = ${s.elements[s.ortho[i]].name}`;
    dot.append(title);
    svg.append(dot, label);
  });
}

function drawTable(s) {
  const box = $("sasaki-table");
  box.replaceChildren();
  if (!s.sasaki) return;
  const names = s.elements.map((e) => e.name);
  const table = document.createElement("table");
  const head = table.insertRow();
  head.innerHTML = "<th>a &amp; b</th>";
  for (const b of names) head.insertAdjacentHTML("beforeend", `<th>${b}</th>`);
  s.sasaki.forEach((row, a) => {
    const tr = table.insertRow();
    tr.insertAdjacentHTML("beforeend", `<th>${names[a]}</th>`);
    for (const v of row) tr.insertCell().textContent = v;
  });
  box.append(table);
}

function showStructure() {
  try {
    const s = JSON.parse(structure($("structure-select").value));
    drawHasse(s);
    drawTable(s);
    $("structure-props").textContent =
      `${s.elements.length} elements, ${s.orthomodular ? "orthomodular" : "not orthomodular"}`;
    const v = s.report.violations;
    show(
      $("structure-report"),
      v.length === 0
        ? "every checked law holds"
        : v.map((x) => `${x.law}: (${x.witness.join(", ")})`).join("\n"),
    );
  } catch (e) {
    show($("structure-report"), String(e.message ?? e), true);
  }
}

function atomsOf(text) {
  return [...new Set(text.match(/[a-z][a-zA-Z0-9_]*/g) ?? [])].sort();
}

function refreshValuation() {
  const s = JSON.parse(structure($("eval-structure").value));
  const box = $("eval-valuation");
  const previous = Object.fromEntries([...box.querySelectorAll("select")].map((el) => [el.name, el.value]));
  box.replaceChildren();
  for (const atom of atomsOf($("eval-term").value)) {
    const sel = document.createElement("select");
    sel.name = atom;
    for (const e of s.elements) sel.add(new Option(e.name, e.name));
    if (s.elements.some((e) => e.name === previous[atom])) sel.value = previous[atom];
    box.append(` ${atom} = `, sel);
  }
}

function runEvaluate() {
  const valuation = Object.fromEntries(
    [...$("eval-valuation").querySelectorAll("select")].map((el) => [el.name, el.value]),
  );
  try {
    const r = JSON.parse(evaluate($("eval-term").value, $("eval-structure").value, JSON.stringify(valuation)));
    show($("eval-out"), r.steps.map((s) => `${s.term}  =  ${s.value}`).join("\n"));
  } catch (e) {
    show($("eval-out"), String(e.message ?? e), true);
  }
}

await init();

for (const name of JSON.parse(catalog())) {
  $("structure-select").add(new Option(name, name));
  if (name !== "o6") $("eval-structure").add(new Option(name, name));
}
$("structure-select").value = "mo2";
$("eval-structure").value = "mo2";

$("decide-form").addEventListener("submit", (ev) => {
  ev.preventDefault();
  decide();
});
$("structure-select").addEventListener("change", showStructure);
$("eval-structure").addEventListener("change", refreshValuation);
$("eval-term").addEventListener("input", refreshValuation);
$("eval-form").addEventListener("submit", (ev) => {
  ev.preventDefault();
  runEvaluate();
});

decide();
showStructure();
refreshValuation();
runEvaluate();
