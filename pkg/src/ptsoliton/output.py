"""Artifact writers: manifest, CSV tables, SVG plots, text reports.

Tabular outputs are byte-deterministic for a fixed config and seed: rows
are sorted, floats use a fixed format, the manifest carries no timestamps,
and SVGs are rendered with a pinned hash salt and no creation date.
"""
import csv
import json
import os
from importlib import metadata

import numpy as np

from .config import FORMAT_VERSION
from .spectra import BandLocus, StabilityReport, Tolerances

DEFAULT_OUT = "ptsol-out"
ENV_OUT = "PTSOL_OUT"

_F = "{:.16e}".format


def resolve_out_dir(explicit=None) -> str:
    """--out flag wins, then the PTSOL_OUT environment variable, then ./ptsol-out."""
    path = explicit or os.environ.get(ENV_OUT) or DEFAULT_OUT
    os.makedirs(path, exist_ok=True)
    return path


def _versions() -> dict:
    import scipy
    try:
        own = metadata.version("artifact")
    except metadata.PackageNotFoundError:
        own = "0.0.0"
    return {"artifact": own, "numpy": np.__version__, "scipy": scipy.__version__}


def write_manifest(out_dir, command: str, cfg, extra: dict | None = None) -> str:
    doc = {
        "format_version": FORMAT_VERSION,
        "command": command,
        "config": cfg.to_dict(),
        "versions": _versions(),
    }
    if extra:
        doc.update(extra)
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def write_spectrum_csv(path, labeled_pairs) -> str:
    """Rows of (EigenPair, class-label), sorted by eigenvalue."""
    rows = sorted(((p.eta.real, p.eta.imag, p.residual, label)
                   for p, label in labeled_pairs),
                  key=lambda r: (r[0], r[1], r[3]))
    with open(path, "w", newline="") as fh:
        fh.write(f"# format_version={FORMAT_VERSION}\n")
        writer = csv.writer(fh)
        writer.writerow(["re_eta", "im_eta", "residual", "class"])
        for re, im, res, label in rows:
            writer.writerow([_F(re), _F(im), _F(res), label])
    return path


def write_sweep_csv(path, sweep) -> str:
    with open(path, "w", newline="") as fh:
        fh.write(f"# format_version={FORMAT_VERSION}\n")
        writer = csv.writer(fh)
        writer.writerow([sweep.parameter, "verdict", "max_growth",
                         "n_discrete", "n_zero", "error"])
        for i, value in enumerate(sweep.values):
            report = sweep.reports[i]
            if report is None:
                writer.writerow([_F(value), "", "", "", "",
                                 sweep.failures.get(i, "unknown failure")])
            else:
                writer.writerow([_F(value), report.verdict,
                                 _F(report.max_growth),
                                 len(report.discrete), report.zero_modes, ""])
    return path


def write_events_json(path, events, parameter: str) -> str:
    doc = {
        "format_version": FORMAT_VERSION,
        "parameter": parameter,
        "events": [
            {
                "param_low": ev.param_low,
                "param_high": ev.param_high,
                "colliding_axis": ev.colliding_axis,
                "colliding_pair_before": [[e.real, e.imag]
                                          for e in ev.colliding_pair_before],
                "emerging_pair_after": [[e.real, e.imag]
                                        for e in ev.emerging_pair_after],
            }
            for ev in events
        ],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def write_propagation_csv(path, record) -> str:
    with open(path, "w", newline="") as fh:
        fh.write(f"# format_version={FORMAT_VERSION}\n")
        writer = csv.writer(fh)
        writer.writerow(["z", "peak_amplitude", "total_power", "deviation"])
        for i, z in enumerate(record.z_samples):
            writer.writerow([_F(z), _F(record.peak_amplitude[i]),
                             _F(record.total_power[i]), _F(record.deviation[i])])
    return path


def render_report(report: StabilityReport, tols: Tolerances | None = None) -> str:
    tols = tols or Tolerances()
    lines = [
        f"verdict: {report.verdict}",
        f"max_growth: {report.max_growth:.6e}",
        f"zero_modes: {report.zero_modes}",
        f"spectral_radius: {report.scale:.6e}",
        f"pairing_defect: {report.pairing_defect:.3e}",
        f"conjugate_defect: {report.conjugate_defect:.3e}",
        "band_edges: " + ", ".join(f"{e.real:+.4f}{e.imag:+.4f}i"
                                   for e in report.band.edges),
    ]
    for name, count in sorted(report.counts.items()):
        lines.append(f"count_{name}: {count}")
    lines.append("tolerances: " + json.dumps(tols.as_dict(), sort_keys=True))
    return "\n".join(lines) + "\n"


def write_report(path, report: StabilityReport, tols=None) -> str:
    with open(path, "w") as fh:
        fh.write(render_report(report, tols))
    return path


# -- plots -------------------------------------------------------------------

def _plt():
    import matplotlib
    matplotlib.use("Agg", force=True)
    matplotlib.rcParams["svg.hashsalt"] = "ptsol"
    import matplotlib.pyplot as plt
    return plt


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    import matplotlib.pyplot as plt
    plt.close(fig)


def plot_spectrum(path, buckets, band: BandLocus, title: str = "") -> str:
    """Scatter of eta by bucket with the analytic band locus overlaid."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(5, 5))
    styles = {"continuous": dict(s=6, c="0.6", marker="."),
              "discrete": dict(s=28, c="tab:red", marker="o"),
              "spurious": dict(s=12, c="tab:orange", marker="x")}
    top = band.im_min
    for label, pairs in buckets.items():
        if not pairs:
            continue
        etas = np.array([p.eta for p in pairs])
        top = max(top, float(np.max(np.abs(etas.imag))))
        ax.scatter(etas.real, etas.imag, label=f"{label} ({len(pairs)})",
                   **styles.get(label, {}))
    for sign in (1, -1):
        ax.plot([sign * band.re_offset] * 2, [band.im_min, 1.05 * top],
                c="tab:blue", lw=1, alpha=0.6)
        ax.plot([sign * band.re_offset] * 2, [-1.05 * top, -band.im_min],
                c="tab:blue", lw=1, alpha=0.6)
    ax.set_xlabel("Re eta")
    ax.set_ylabel("Im eta")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right", fontsize=8)
    _save(fig, path)
    return path


def plot_sweep(path, sweep, title: str = "") -> str:
    plt = _plt()
    fig, (ax_re, ax_im) = plt.subplots(1, 2, figsize=(9, 4), sharex=True)
    for traj in sweep.trajectories:
        xs = sweep.values[traj.start:traj.end + 1]
        etas = np.array(traj.etas)
        ax_re.plot(xs, np.abs(etas.real), ".-", ms=3, lw=0.8)
        ax_im.plot(xs, np.abs(etas.imag), ".-", ms=3, lw=0.8)
    ax_re.set_ylabel("|Re eta|")
    ax_im.set_ylabel("|Im eta|")
    for ax in (ax_re, ax_im):
        ax.set_xlabel(sweep.parameter)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    _save(fig, path)
    return path


def plot_propagation(path, record, title: str = "") -> str:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6, 4))
    dev = np.maximum(record.deviation, 1e-300)
    ax.semilogy(record.z_samples, dev, label="modulus deviation")
    ax.semilogy(record.z_samples, record.peak_amplitude, label="peak amplitude")
    ax.set_xlabel("z")
    ax.legend(fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    _save(fig, path)
    return path
