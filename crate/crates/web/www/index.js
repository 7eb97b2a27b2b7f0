import init, { solve, count, profile } from "./pkg/qcsp_web.js";

const presets = {
  meeting: {
    calculus: "ia",
    variables: ["talk", "lunch", "walk"],
    constraints: [
      { scope: ["talk", "lunch"], relations: ["m", "p"] },
      { scope: ["walk", "lunch"], relations: ["d", "s", "f"] },
      { scope: ["talk", "walk"], relations: ["o", "m"] },
    ],
  },
  betweenness: {
    calculus: "pa",
    variables: ["w", "x", "y", "z"],
    constraints: [
      { scope: ["w", "x", "y"], dnf: [
        [{ rel: "<", args: ["w", "x"] }, { rel: "<", args: ["x", "y"] }],
        [{ rel: ">", args: ["w", "x"] }, { rel: ">", args: ["x", "y"] }],
      ] },
      { scope: ["x", "y", "z"], dnf: [
        [{ rel: "<", args: ["x", "y"] }, { rel: "<", args: ["y", "z"] }],
        [{ rel: ">", args: ["x", "y"] }, { rel: ">", args: ["y", "z"] }],
      ] },
    ],
  },
  cycle: {
    calculus: "pa",
    variables: ["a", "b", "c"],
    constraints: [
      { scope: ["a", "b"], relations: ["<"] },
      { scope: ["b", "c"], relations: ["<"] },
      { scope: ["c", "a"], relations: ["<"] },
    ],
  },
};

const $ = (id) => document.getElementById(id);

function loadPreset() {
  $("doc").value = JSON.stringify(presets[$("preset").value], null, 2);
}

function showError(msg) {
  $("verdict").innerHTML = `<span class="err">${msg}</span>`;
  $("details").textContent = "";
}

function drawSpans(spans) {
  const canvas = $("spans");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (!spans) return;
  const lo = Math.min(...spans.map((s) => s.from));
  const hi = Math.max(...spans.map((s) => s.to));
  const x = (v) => 120 + ((v - lo) / Math.max(hi - lo, 1)) * (canvas.width - 150);
  const row = Math.min(30, (canvas.height - 10) / spans.length);
  ctx.font = "12px sans-serif";
  spans.forEach((s, i) => {
    const y = 10 + i * row;
    ctx.fillStyle = "#333";
    ctx.fillText(s.var, 5, y + row / 2 + 4);
    ctx.fillStyle = "#4a7bd0";
    const w = Math.max(x(s.to) - x(s.from), 4);
    ctx.fillRect(x(s.from) - (s.to === s.from ? 2 : 0), y + 4, w, row - 8);
  });
}

function drawProfile(nodes) {
  const canvas = $("spans");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const peak = Math.max(...nodes.map((n) => n.record_size), 1);
  const bar = canvas.width / nodes.length;
  const colours = { leaf: "#999", introduce: "#4a7bd0", forget: "#d08a4a", join: "#4ab07b" };
  nodes.forEach((n, i) => {
    const h = (n.record_size / peak) * (canvas.height - 20);
    ctx.fillStyle = colours[n.kind];
    ctx.fillRect(i * bar, canvas.height - h, Math.max(bar - 1, 1), h);
  });
}

function onSolve() {
  const out = JSON.parse(solve($("doc").value));
  if (out.error) return showError(out.error);
  $("verdict").textContent =
    `${out.sat ? "SAT" : "UNSAT"} (width ${out.width}, ${out.nodes} nodes, peak record ${out.peak_record})`;
  drawSpans(out.spans);
  const cert = (out.certificate || []).map((e) =>
    e.args.length === 2 ? `${e.args[0]} ${e.rel} ${e.args[1]}` : `${e.rel}(${e.args.join(", ")})`);
  $("details").textContent = [cert.join("\n"), out.model || ""].filter(Boolean).join("\n\n");
}

function onProfile() {
  const out = JSON.parse(profile($("doc").value));
  if (out.error) return showError(out.error);
  $("verdict").textContent = `${out.sat ? "SAT" : "UNSAT"} (width ${out.width}); bar height = record size`;
  drawProfile(out.nodes);
  $("details").textContent = out.nodes
    .map((n) => `${n.id}\t${n.kind}\t{${n.bag.join(", ")}}\t${n.record_size}`)
    .join("\n");
}

function onCount() {
  const out = JSON.parse(count($("calculus").value, Number($("m").value)));
  $("count-out").textContent = out.error ? out.error : `${out.count}`;
}

await init();
$("preset").addEventListener("change", loadPreset);
$("solve").addEventListener("click", onSolve);
$("profile").addEventListener("click", onProfile);
$("count").addEventListener("click", onCount);
loadPreset();
