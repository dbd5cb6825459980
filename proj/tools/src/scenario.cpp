#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "panda/atomic/channels.hpp"
#include "panda/errors.hpp"
#include "panda/io.hpp"
#include "panda/units.hpp"
#include "panda_cli/cli.hpp"

namespace panda::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace panda::units;

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"pulse-synth",  "panda-sim", "panda-retrieve", "panda-anglemap",
                                             "panda-so",     "streak-sim", "atom-xsec",     "fano-check"};
  return c;
}

void ScenarioConfig::validate() const {
  if (std::find(commands().begin(), commands().end(), command) == commands().end()) {
    throw ConfigurationError(fmt::format("unknown command '{}'", command));
  }
  if (format != "csv" && format != "json") throw ConfigurationError("--format must be csv or json");
  if (!config.is_object()) throw ConfigurationError("config must be a JSON object");
}

fs::path ScenarioConfig::base_dir() const {
  return config_path.empty() ? fs::current_path() : config_path.parent_path();
}

std::string ScenarioConfig::hash() const {
  return io::fnv1a_hex(command + "\n" + config.dump() + "\n" + (seed ? std::to_string(*seed) : "-"));
}

namespace {

double num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigurationError(fmt::format("'{}' must be a number", key));
  return j[key].get<double>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

pulse::SpectralPulse make_pulse(const json& j, const fs::path& base) {
  if (!j.is_object()) throw ConfigurationError("pulse must be an object");
  if (j.contains("file")) return io::pulse_from_json(io::read_json(resolve(base, j["file"].get<std::string>())));

  const auto grid_cfg = j.value("grid", json::object());
  if (j.value("shape", std::string("gaussian")) == "flat") {
    const double lo = num(grid_cfg, "lo_eV", 1.0);
    const double hi = num(grid_cfg, "hi_eV", 150.0);
    const auto n = static_cast<std::size_t>(num(grid_cfg, "points", 600));
    auto grid = pulse::FrequencyGrid::uniform(eV_to_au(lo), eV_to_au(hi), n);
    const double delay = as_to_au(num(j, "delay_as", 0.0));
    std::vector<double> phase(n);
    for (std::size_t i = 0; i < n; ++i) phase[i] = num(j, "cep_rad", 0.0) + delay * grid[i];
    return pulse::SpectralPulse(std::move(grid), std::vector<double>(n, num(j, "amplitude", 1.0)), std::move(phase),
                                num(j, "cep_rad", 0.0));
  }

  pulse::GaussianPulseSpec spec;
  spec.center = eV_to_au(num(j, "center_eV", 100.0));
  spec.fwhm_bandwidth = eV_to_au(num(j, "fwhm_eV", 5.0));
  spec.gdd = as2_to_au(num(j, "gdd_as2", 0.0));
  spec.delay = as_to_au(num(j, "delay_as", 0.0));
  spec.amplitude = num(j, "amplitude", 1.0);
  spec.cep = num(j, "cep_rad", 0.0);
  spec.validate();
  const double c = au_to_eV(spec.center);
  const double f = au_to_eV(spec.fwhm_bandwidth);
  const double lo = num(grid_cfg, "lo_eV", c - 4.0 * f);
  const double hi = num(grid_cfg, "hi_eV", c + 4.0 * f);
  const auto n = static_cast<std::size_t>(num(grid_cfg, "points", 801));
  if (lo < 0.0) throw ConfigurationError("pulse grid would extend below 0 eV; set grid.lo_eV");
  return pulse::synthesize_gaussian(spec, pulse::FrequencyGrid::uniform(eV_to_au(lo), eV_to_au(hi), n));
}

wavepacket::WavePacket make_wavepacket(const json& j) {
  if (j.contains("hydrogenic")) {
    const auto& h = j["hydrogenic"];
    return wavepacket::hydrogenic_pair(h.value("n1", 2), h.value("n2", 3), h.value("l", 1), h.value("Z", 1.0));
  }
  if (j.contains("states")) return io::wavepacket_from_json(j);
  throw ConfigurationError("wave_packet needs 'hydrogenic' or 'states'");
}

std::vector<double> make_energies(const json& j, double lo_eV, double hi_eV, double step_eV) {
  if (j.is_array()) {
    std::vector<double> e;
    for (const auto& v : j) e.push_back(eV_to_au(v.get<double>()));
    return e;
  }
  const double lo = num(j, "lo_eV", lo_eV);
  const double hi = num(j, "hi_eV", hi_eV);
  std::size_t n;
  if (j.contains("count")) {
    n = j["count"].get<std::size_t>();
  } else {
    const double step = num(j, "step_eV", step_eV);
    if (!(step > 0.0)) throw ConfigurationError("energies.step_eV must be positive");
    n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  }
  if (!(hi > lo) || n < 2) throw ConfigurationError("energy grid needs hi > lo and at least 2 points");
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = eV_to_au(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return e;
}

std::vector<double> make_delays(const json& j, const wavepacket::WavePacket& w) {
  if (j.contains("list_fs")) {
    std::vector<double> d;
    for (const auto& v : j["list_fs"]) d.push_back(fs_to_au(v.get<double>()));
    return d;
  }
  return model::default_delays(w, j.value("per_period", 8), j.value("periods", 3), fs_to_au(num(j, "start_fs", 0.0)));
}

model::PacketChannels make_channels(const json& j, const wavepacket::WavePacket& w, std::span<const double> energies,
                                    const fs::path& base) {
  const std::string kind = j.is_string() ? j.get<std::string>() : j.value("kind", std::string("hydrogenic"));
  model::PacketChannels ch = [&]() -> model::PacketChannels {
    if (kind == "hydrogenic") return model::hydrogenic_channels(w, energies, j.is_object() ? num(j, "Z", 1.0) : 1.0);
    if (kind == "constant") {
      const int L = j.value("L", w.state1().l + 1);
      return {atomic::ChannelTable::constant(w.state1().l, w.state1().m, L, num(j, "state1", 1.0)),
              atomic::ChannelTable::constant(w.state2().l, w.state2().m, L, num(j, "state2", 1.0))};
    }
    if (kind == "files") {
      const auto files = j.at("files");
      return {io::read_channel_table(resolve(base, files.at(0).get<std::string>()), w.state1().l, w.state1().m),
              io::read_channel_table(resolve(base, files.at(1).get<std::string>()), w.state2().l, w.state2().m)};
    }
    throw ConfigurationError(fmt::format("unknown channel kind '{}'", kind));
  }();
  if (j.is_object() && j.contains("flip_above_eV")) {
    // synthetic Cooper-style sign change
    const double t = eV_to_au(j["flip_above_eV"].get<double>());
    const std::string which = j.value("flip", std::string("both"));
    if (which == "both" || which == "state1") ch.first = ch.first.sign_flipped_above(t);
    if (which == "both" || which == "state2") ch.second = ch.second.sign_flipped_above(t);
  }
  return ch;
}

}  // namespace panda::cli
