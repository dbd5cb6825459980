#include <fmt/core.h>

#include "panda/errors.hpp"
#include "panda_cli/cli.hpp"

namespace panda::cli {

namespace {

const char* header = R"PY(import os
import json
import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def path(name):
    return os.path.join(HERE, name)


def read_matrix_header(name):
    with open(path(name)) as f:
        for line in f:
            if line.startswith("# delay_fs"):
                return np.array([float(v) for v in line[2:].strip().split(",")[1:]])
    raise RuntimeError("no energy header in " + name)


def spectrogram(name, title):
    energies = read_matrix_header(name)
    data = np.loadtxt(path(name), delimiter=",", comments="#", ndmin=2)
    delays, z = data[:, 0], data[:, 1:]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    m = ax.pcolormesh(energies, delays, z, shading="auto", cmap="jet")
    fig.colorbar(m, ax=ax, label="probability (arb. u.)")
    ax.set_xlabel("photoelectron energy (eV)")
    ax.set_ylabel("delay (fs)")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path(os.path.splitext(name)[0] + ".png"), dpi=150)


def read_table(name):
    with open(path(name)) as f:
        rows = [l.strip() for l in f if l.strip() and not l.startswith("#")]
    cols = rows[0].split(",")
    data = np.array([[float(v) for v in l.split(",")] for l in rows[1:]])
    return cols, data


def curves(name, title):
    cols, data = read_table(name)
    fig, ax = plt.subplots(figsize=(6, 4))
    for k, c in enumerate(cols[1:], start=1):
        ax.plot(data[:, 0], data[:, k], label=c)
    ax.set_xlabel(cols[0])
    ax.legend(fontsize=7)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path(os.path.splitext(name)[0] + ".png"), dpi=150)


def anglemap(name, title):
    with open(path(name)) as f:
        rows = [l for l in f if not l.startswith("#")]
    energies = np.array([float(v) for v in rows[0].strip().split(",")[1:]])
    data = np.array([[float(v) for v in l.strip().split(",")] for l in rows[1:]])
    theta, z = data[:, 0], data[:, 1:]
    lim = np.nanmax(np.abs(z))
    fig, ax = plt.subplots(figsize=(6, 4.5))
    m = ax.pcolormesh(energies, theta, z, shading="auto", cmap="RdBu_r", vmin=-lim, vmax=lim)
    ax.contour(energies, theta, z, levels=[0.0], colors="k", linewidths=1.0)
    # plus and minus signs mark the delay regions
    for i in np.linspace(0, len(theta) - 1, 5).astype(int):
        for k in np.linspace(0, len(energies) - 1, 5).astype(int):
            if np.isfinite(z[i, k]) and abs(z[i, k]) > 0.05 * lim:
                ax.text(energies[k], theta[i], "+" if z[i, k] > 0 else "−", ha="center", va="center",
                        fontsize=14, color="k")
    fig.colorbar(m, ax=ax, label="PANDA delay (as)")
    ax.set_xlabel("photoelectron energy (eV)")
    ax.set_ylabel("emission angle (deg)")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path(os.path.splitext(name)[0] + ".png"), dpi=150)


def pulse(name, title):
    with open(path(name)) as f:
        p = json.load(f)
    w = np.array(p["grid_au"]) * 27.211386245988
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(w, np.array(p["magnitude"]) ** 2, "k")
    ax.set_xlabel("photon energy (eV)")
    ax.set_ylabel("|E|^2")
    ax2 = ax.twinx()
    ax2.plot(w, p["phase_rad"], "r--")
    ax2.set_ylabel("phase (rad)")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path(os.path.splitext(name)[0] + ".png"), dpi=150)


)PY";

}  // namespace

std::string emit_plot_script(const std::vector<Artifact>& artifacts) {
  if (artifacts.empty()) throw DomainError("emit_plot_script: no artifacts");
  std::string body;
  for (const auto& a : artifacts) {
    if (!std::filesystem::exists(a.path)) throw FileError(fmt::format("artifact {} does not exist", a.path.string()));
    if (a.kind != "spectrogram" && a.kind != "curves" && a.kind != "anglemap" && a.kind != "pulse") {
      throw DomainError(fmt::format("emit_plot_script: unknown artifact kind '{}'", a.kind));
    }
    body += fmt::format("{}(\"{}\", \"{}\")\n", a.kind, a.path.filename().string(), a.title);
  }
  return std::string(header) + body;
}

}  // namespace panda::cli
