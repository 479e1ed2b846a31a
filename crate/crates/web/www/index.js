import init, { residuum, topology, power_scan } from "./pkg/fuzzint_web.js";

const $ = (id) => document.getElementById(id);

const EXAMPLE = {
  ground: { points: ["x", "y"], basis: { builtin: "godel", n: 3 } },
  opens: [["0", "0"], ["1/2", "0"], ["1", "1/2"], ["1", "1"]],
};

function el(tag, text, cls) {
  const e = document.createElement(tag);
  if (text !== undefined) e.textContent = text;
  if (cls) e.className = cls;
  return e;
}

function renderTable(t) {
  const table = el("table");
  table.append(el("caption", t.title));
  const head = el("tr");
  t.columns.forEach((c) => head.append(el("th", c)));
  table.append(head);
  t.rows.forEach((r) => {
    const tr = el("tr");
    r.forEach((c) => tr.append(el("td", c)));
    table.append(tr);
  });
  return table;
}

function run(out, f) {
  const target = $(out);
  target.replaceChildren();
  try {
    f(target);
  } catch (e) {
    target.append(el("div", String(e), "error"));
  }
}

function flag(label, ok) {
  return el("p", `${label}: ${ok ? "yes" : "no"}`, ok ? "ok" : "fail");
}

$("residuum-go").onclick = () =>
  run("residuum-out", (out) => {
    const v = JSON.parse(residuum($("kind").value, Number($("n").value)));
    out.append(renderTable(v.residuum), renderTable(v.tensor));
  });

$("topology-go").onclick = () =>
  run("topology-out", (out) => {
    const v = JSON.parse(topology($("doc").value));
    out.append(el("p", `${v.opens.length} opens on {${v.points.join(", ")}} over ${v.basis}`));
    out.append(flag("closed under joins", v.join_closed), flag("interior idempotent", v.idempotent));
    out.append(renderTable(v.interior));
    (v.closures || []).forEach((c) => {
      out.append(renderTable(c.table));
      out.append(flag(`${c.table.title}: u ≤ c(u) for all u`, c.extensive));
    });
  });

$("scan-go").onclick = () =>
  run("scan-out", (out) => {
    const v = JSON.parse(power_scan(Number($("nmax").value), Number($("grid").value)));
    const table = el("table");
    table.append(el("caption", `${v.grid_points} grid points, tolerance ${v.tolerance}`));
    const head = el("tr");
    ["n", "axioms", "idempotent"].forEach((c) => head.append(el("th", c)));
    table.append(head);
    v.rows.forEach((r) => {
      const tr = el("tr");
      const idem = r.idempotent.status === "holds"
        ? "yes"
        : `no: t=${r.idempotent.witness.t.toFixed(3)}, once ${r.idempotent.witness.once.toFixed(4)}, twice ${r.idempotent.witness.twice.toFixed(4)}`;
      [String(r.n), r.axioms.status === "holds" ? "ok" : r.axioms.witness, idem].forEach((c) => tr.append(el("td", c)));
      table.append(tr);
    });
    out.append(table);
    out.append(el("p", `idempotent: ${v.idempotent.join(", ")}`));
  });

init().then(() => {
  $("status").textContent = "Ready.";
  $("doc").value = JSON.stringify(EXAMPLE, null, 2);
});
