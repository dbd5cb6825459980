#include "panda/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/core.h>

#include "panda/atomic/angular.hpp"
#include "panda/errors.hpp"
#include "panda/units.hpp"

#ifndef PANDA_VERSION
#define PANDA_VERSION "0.0.0"
#endif

namespace panda::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view version() { return PANDA_VERSION; }

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return fmt::format("{:016x}", h);
}

json Provenance::to_json() const {
  json j = {{"command", command}, {"config_hash", config_hash}, {"version", std::string(version())}};
  j["seed"] = seed ? json(*seed) : json(nullptr);
  return j;
}

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw FileError(fmt::format("cannot create {}: {}", path.parent_path().string(), ec.message()));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError(fmt::format("cannot write {}", path.string()));
  out << text;
  if (!out) throw FileError(fmt::format("write failed for {}", path.string()));
}

json read_json(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw FileError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

namespace {

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigurationError(fmt::format("missing field '{}'", key));
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigurationError(fmt::format("field '{}': {}", key, e.what()));
  }
}

std::vector<double> to_eV(const std::vector<double>& v) {
  std::vector<double> o(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) o[i] = units::au_to_eV(v[i]);
  return o;
}

std::vector<double> to_fs(const std::vector<double>& v) {
  std::vector<double> o(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) o[i] = units::au_to_fs(v[i]);
  return o;
}

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> row;
  const char* p = line.c_str();
  while (*p) {
    char* end = nullptr;
    const double v = std::strtod(p, &end);
    if (end == p) throw FileError(fmt::format("not a number in CSV row: '{}'", line));
    row.push_back(v);
    p = end;
    while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
    if (*p == ',') ++p;
  }
  return row;
}

}  // namespace

json pulse_to_json(const pulse::SpectralPulse& p) {
  const auto g = p.grid().points();
  return {{"grid_au", std::vector<double>(g.begin(), g.end())},
          {"magnitude", std::vector<double>(p.magnitude().begin(), p.magnitude().end())},
          {"phase_rad", std::vector<double>(p.phase().begin(), p.phase().end())},
          {"cep_rad", p.cep()}};
}

pulse::SpectralPulse pulse_from_json(const json& j) {
  return pulse::SpectralPulse(pulse::FrequencyGrid(get<std::vector<double>>(j, "grid_au")),
                              get<std::vector<double>>(j, "magnitude"), get<std::vector<double>>(j, "phase_rad"),
                              j.value("cep_rad", 0.0));
}

json wavepacket_to_json(const wavepacket::WavePacket& w) { return model::describe(w); }

wavepacket::WavePacket wavepacket_from_json(const json& j) {
  const auto states = get<json>(j, "states");
  if (!states.is_array() || states.size() != 2) throw ConfigurationError("wave packet needs exactly two states");
  wavepacket::BoundState s[2];
  for (int i = 0; i < 2; ++i) {
    const auto& e = states[static_cast<std::size_t>(i)];
    s[i].n = get<int>(e, "n");
    s[i].l = get<int>(e, "l");
    s[i].m = e.value("m", 0);
    if (e.contains("j") && !e["j"].is_null()) s[i].two_j = static_cast<int>(std::lround(2.0 * e["j"].get<double>()));
    s[i].energy = units::eV_to_au(get<double>(e, "energy_eV"));
    s[i].amplitude = e.value("amplitude", 1.0);
  }
  return wavepacket::WavePacket::normalized(s[0], s[1], j.value("lifetime_inv", 0.0));
}

fs::path sidecar_path(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".json");
  return p;
}

void write_spectrogram(const fs::path& csv, const model::Spectrogram& s, const Provenance& prov,
                       const model::DelayCurve* curve) {
  std::string out;
  out += fmt::format("# kind={}\n", s.kind);
  out += "# rows: delay_fs; columns: photoelectron energy_eV\n";
  out += "# delay_fs";
  for (double e : s.energies) out += "," + format_number(units::au_to_eV(e));
  out += "\n";
  for (std::size_t id = 0; id < s.delays.size(); ++id) {
    out += format_number(units::au_to_fs(s.delays[id]));
    for (std::size_t ie = 0; ie < s.energies.size(); ++ie) out += "," + format_number(s.at(id, ie));
    out += "\n";
  }
  write_text(csv, out);

  json j = s.meta;
  j["kind"] = s.kind;
  j["data_file"] = csv.filename().string();
  j["energies_eV"] = to_eV(s.energies);
  j["delays_fs"] = to_fs(s.delays);
  j["energies_au"] = s.energies;
  j["delays_au"] = s.delays;
  j["splitting_au"] = s.splitting;
  j["effective_binding_au"] = s.effective_binding;
  j["theta_deg"] = s.theta ? json(units::rad_to_deg(*s.theta)) : json(nullptr);
  if (s.kind == "panda") {
    j["delay_zero"] =
        "tau = 0 is the laser-prepared packet origin; the PANDA delay theta0/dw is 0 for a transform-limited pulse "
        "at zero delay with real matrix elements";
  } else {
    j["delay_zero"] = "tau = 0 puts the XUV group-delay centroid at the laser envelope peak";
  }
  if (curve) {
    j["branch"] = curve->branch;
    j["mask"] = curve->mask;
    j["panda_delay_as"] = [&] {
      std::vector<double> d(curve->delay.size());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = units::au_to_as(curve->delay[i]);
      return d;
    }();
    j["contrast_threshold"] = model::contrast_threshold;
  }
  j["provenance"] = prov.to_json();
  write_json(sidecar_path(csv), j);
}

model::Spectrogram read_spectrogram(const fs::path& csv) {
  const json j = read_json(sidecar_path(csv));
  model::Spectrogram s;
  s.kind = j.value("kind", "panda");
  s.energies = get<std::vector<double>>(j, "energies_au");
  s.delays = get<std::vector<double>>(j, "delays_au");
  s.splitting = j.value("splitting_au", 0.0);
  s.effective_binding = j.value("effective_binding_au", 0.0);
  if (j.contains("theta_deg") && !j["theta_deg"].is_null()) s.theta = units::deg_to_rad(j["theta_deg"].get<double>());
  s.meta = j;

  const auto rows = read_numeric_csv(csv);
  if (rows.size() != s.delays.size()) {
    throw FileError(fmt::format("{}: {} rows, sidecar lists {} delays", csv.string(), rows.size(), s.delays.size()));
  }
  s.values.reserve(rows.size() * s.energies.size());
  for (const auto& r : rows) {
    if (r.size() != s.energies.size() + 1) throw FileError(fmt::format("{}: ragged row", csv.string()));
    s.values.insert(s.values.end(), r.begin() + 1, r.end());
  }
  return s;
}

void write_channel_table(const fs::path& csv, const atomic::ChannelTable& t) {
  std::string out = fmt::format("# channel table l={} m={}\nepsilon_au,L,radial_integral,eta_L\n", t.l(), t.m());
  for (std::size_t i = 0; i < t.energies().size(); ++i) {
    for (const auto& c : t.channels()) {
      out += fmt::format("{},{},{},{}\n", format_number(t.energies()[i]), c.L, format_number(c.radial[i]),
                         format_number(c.phase[i]));
    }
  }
  write_text(csv, out);
}

atomic::ChannelTable read_channel_table(const fs::path& csv, int l, int m) {
  const auto rows = read_numeric_csv(csv);
  std::vector<double> energies;
  std::vector<atomic::ChannelTable::Channel> channels;
  for (const auto& r : rows) {
    if (r.size() != 4) throw FileError(fmt::format("{}: expected 4 columns", csv.string()));
    if (energies.empty() || r[0] != energies.back()) energies.push_back(r[0]);
    const int L = static_cast<int>(std::lround(r[1]));
    auto it = std::find_if(channels.begin(), channels.end(), [L](const auto& c) { return c.L == L; });
    if (it == channels.end()) {
      channels.push_back({L, atomic::cos_theta_element(L, l, m), {}, {}});
      it = channels.end() - 1;
    }
    it->radial.push_back(r[2]);
    it->phase.push_back(r[3]);
  }
  return atomic::ChannelTable(l, m, std::move(energies), std::move(channels));
}

json retrieval_to_json(const retrieval::RetrievalResult& r) {
  json j;
  j["energies_eV"] = to_eV(r.energies);
  j["omega_eV"] = to_eV(r.omega);
  j["beat_phase_rad"] = r.beat_phase;
  std::vector<double> gd(r.group_delay.size());
  for (std::size_t i = 0; i < gd.size(); ++i) gd[i] = units::au_to_as(r.group_delay[i]);
  j["group_delay_as"] = gd;
  j["spectral_phase_rad"] = r.spectral_phase;
  j["mask"] = r.mask;
  j["bridged"] = r.bridged;
  j["branch"] = r.branch;
  j["contrast"] = r.contrast;
  j["splitting_eV"] = units::au_to_eV(r.splitting);
  j["effective_binding_eV"] = units::au_to_eV(r.effective_binding);
  j["anchor_eV"] = units::au_to_eV(r.anchor);
  j["zero_ref_as"] = units::au_to_as(r.zero_ref);
  j["rms_error_vs_truth_as"] = r.rms_error_vs_truth ? json(units::au_to_as(*r.rms_error_vs_truth)) : json(nullptr);
  return j;
}

void write_retrieval_csv(const fs::path& csv, const retrieval::RetrievalResult& r) {
  std::vector<double> e = to_eV(r.energies);
  std::vector<double> w = to_eV(r.omega);
  std::vector<double> gd(r.group_delay.size());
  std::vector<double> mask(r.mask.size());
  std::vector<double> branch(r.branch.size());
  for (std::size_t i = 0; i < gd.size(); ++i) {
    gd[i] = units::au_to_as(r.group_delay[i]);
    mask[i] = r.mask[i] ? 1.0 : 0.0;
    branch[i] = r.branch[i];
  }
  write_table(csv, {"PANDA retrieval"},
              {"energy_eV", "omega_eV", "beat_phase_rad", "group_delay_as", "spectral_phase_rad", "mask", "branch",
               "contrast"},
              {e, w, r.beat_phase, gd, r.spectral_phase, mask, branch, r.contrast});
}

void write_table(const fs::path& csv, const std::vector<std::string>& comments, const std::vector<std::string>& names,
                 const std::vector<std::vector<double>>& columns) {
  if (names.size() != columns.size()) throw DomainError("write_table: names and columns differ in count");
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != n) throw DomainError("write_table: ragged columns");
  }
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  for (std::size_t k = 0; k < names.size(); ++k) out += (k ? "," : "") + names[k];
  out += "\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < columns.size(); ++k) out += (k ? "," : "") + format_number(columns[k][i]);
    out += "\n";
  }
  write_text(csv, out);
}

std::vector<std::vector<double>> read_numeric_csv(const fs::path& csv) {
  std::istringstream in(read_text(csv));
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const bool header = first && !(std::isdigit(static_cast<unsigned char>(line[0])) || line[0] == '-' ||
                                   line[0] == '+' || line[0] == '.');
    first = false;
    if (header) continue;
    rows.push_back(parse_row(line));
  }
  return rows;
}

}  // namespace panda::io
