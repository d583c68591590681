import csv
import json
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def load(name):
    path = os.path.join(HERE, name + ".csv")
    if os.path.exists(path):
        with open(path, newline="") as f:
            lines = [line for line in f if not line.startswith("# ")]
        return list(csv.DictReader(lines))
    with open(os.path.join(HERE, name + ".json")) as f:
        table = json.load(f)
    return [dict(zip(table["columns"], map(str, row))) for row in table["rows"]]


def curve(rows, x, y, **match):
    sel = [r for r in rows if all(r[k] == v for k, v in match.items())]
    return [float(r[x]) for r in sel], [float(r[y]) for r in sel]

rows = load("fig2_interferograms")
fig, axes = plt.subplots(1, 2, figsize=(9, 5), sharey=True)
for ax, xi in zip(axes, ("3.25", "4.25")):
    offset = 0.0
    for ell in ("0", "1", "2", "sum"):
        x, y = curve(rows, "x_s", "signal", talbot_ratio=xi, channel=ell)
        top = max(y)
        ax.plot(x, [v / top + offset for v in y], label="sum" if ell == "sum" else f"l={ell}")
        offset += 1.2
    ax.set_title(f"L / L_T = {xi}")
    ax.set_xlabel("x_s / d")
axes[0].legend()
fig.savefig(os.path.join(HERE, "fig2.png"), dpi=150)
