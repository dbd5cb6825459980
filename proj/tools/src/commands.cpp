#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include <fmt/core.h>

#include "panda/atomic/cross_section.hpp"
#include "panda/atomic/fano.hpp"
#include "panda/errors.hpp"
#include "panda/io.hpp"
#include "panda/retrieval.hpp"
#include "panda/spin_orbit.hpp"
#include "panda/streak.hpp"
#include "panda/units.hpp"
#include "panda_cli/cli.hpp"

namespace panda::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace panda::units;

namespace {

constexpr double pi = std::numbers::pi;

// Collects artifacts of one scenario and writes them in the chosen format.
class Emitter {
 public:
  explicit Emitter(const ScenarioConfig& cfg)
      : out_(cfg.out), format_(cfg.format), prov_{cfg.command, cfg.hash(), cfg.seed} {
    fs::create_directories(out_);
  }

  void table(const std::string& stem, const std::string& title, const std::vector<std::string>& comments,
             const std::vector<std::string>& names, const std::vector<std::vector<double>>& cols) {
    if (format_ == "json") {
      json j;
      j["title"] = title;
      j["notes"] = comments;
      j["provenance"] = prov_.to_json();
      for (std::size_t k = 0; k < names.size(); ++k) j["columns"][names[k]] = cols[k];
      json_file(stem, j);
      return;
    }
    const auto path = out_ / (stem + ".csv");
    auto c = comments;
    c.push_back(fmt::format("provenance: command={} config_hash={} version={}", prov_.command, prov_.config_hash,
                            io::version()));
    io::write_table(path, c, names, cols);
    add({"curves", path, title});
  }

  void spectrogram(const std::string& stem, const model::Spectrogram& s, const model::DelayCurve* curve) {
    const auto path = out_ / (stem + ".csv");
    io::write_spectrogram(path, s, prov_, curve);
    written_.push_back(path);
    written_.push_back(io::sidecar_path(path));
    plots_.push_back({"spectrogram", path, s.kind == "streak" ? "streaking spectrogram" : "PANDA spectrogram"});
  }

  void matrix(const std::string& stem, const std::string& title, const std::string& row_name,
              const std::vector<double>& rows, const std::vector<double>& cols_eV,
              const std::vector<std::vector<double>>& values) {
    const auto path = out_ / (stem + ".csv");
    std::vector<std::string> names = {row_name};
    std::vector<std::vector<double>> cols = {rows};
    for (std::size_t k = 0; k < cols_eV.size(); ++k) {
      names.push_back(io::format_number(cols_eV[k]));
      std::vector<double> c(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) c[i] = values[i][k];
      cols.push_back(std::move(c));
    }
    io::write_table(path, {title, "columns after the first: photoelectron energy_eV"}, names, cols);
    written_.push_back(path);
    plots_.push_back({"anglemap", path, title});
  }

  void json_file(const std::string& stem, json j) {
    if (!j.contains("provenance")) j["provenance"] = prov_.to_json();
    const auto path = out_ / (stem + ".json");
    io::write_json(path, j);
    written_.push_back(path);
  }

  void pulse_file(const std::string& stem, const pulse::SpectralPulse& p) {
    json j = io::pulse_to_json(p);
    j["provenance"] = prov_.to_json();
    const auto path = out_ / (stem + ".json");
    io::write_json(path, j);
    written_.push_back(path);
    plots_.push_back({"pulse", path, "spectral pulse"});
  }

  void file(const fs::path& path) { written_.push_back(path); }

  std::vector<fs::path> finish() {
    if (!plots_.empty()) {
      const auto path = out_ / "plot.py";
      io::write_text(path, emit_plot_script(plots_));
      written_.push_back(path);
    }
    return written_;
  }

 private:
  void add(Artifact a) {
    written_.push_back(a.path);
    plots_.push_back(std::move(a));
  }

  fs::path out_;
  std::string format_;
  io::Provenance prov_;
  std::vector<fs::path> written_;
  std::vector<Artifact> plots_;
};

std::vector<double> eV(std::span<const double> v) {
  std::vector<double> o(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) o[i] = au_to_eV(v[i]);
  return o;
}

std::vector<double> as(std::span<const double> v) {
  std::vector<double> o(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) o[i] = au_to_as(v[i]);
  return o;
}

template <class T>
std::vector<double> as_double(const std::vector<T>& v) {
  return std::vector<double>(v.begin(), v.end());
}

json sub(const json& cfg, const char* key) { return cfg.contains(key) ? cfg[key] : json::object(); }

json default_wavepacket() { return {{"hydrogenic", {{"n1", 2}, {"n2", 3}, {"l", 1}}}}; }

// Electron energies reachable from both states inside the pulse grid.
std::vector<double> panda_energies(const json& cfg, const wavepacket::WavePacket& w, const pulse::SpectralPulse& p,
                                   double min_eV) {
  const double lo = std::max(min_eV, au_to_eV(p.grid().front() + w.state2().energy));
  const double hi = au_to_eV(p.grid().back() + w.state1().energy);
  if (!(hi > lo)) throw ConfigurationError("pulse grid is too narrow for the wave packet");
  return make_energies(sub(cfg, "energies"), lo, hi, 0.1);
}

json compatibility_json(const wavepacket::CompatibilityReport& r) {
  json j = json::array();
  for (const auto& c : r.checks) j.push_back({{"name", c.name}, {"ratio", c.ratio}, {"required", c.required}, {"pass", c.pass}});
  return j;
}

void delay_table(Emitter& em, const model::DelayCurve& c, double ip, const std::string& title) {
  std::vector<double> omega(c.energies.size());
  for (std::size_t i = 0; i < omega.size(); ++i) omega[i] = au_to_eV(c.energies[i] + ip);
  em.table("panda_delay", title, {title, "delay = beat phase / splitting; 0 for a transform-limited pulse"},
           {"energy_eV", "omega_eV", "delay_as", "branch", "mask", "contrast"},
           {eV(c.energies), omega, as(c.delay), as_double(c.branch), as_double(c.mask), c.contrast});
}

std::vector<fs::path> pulse_synth(const ScenarioConfig& cfg) {
  Emitter em(cfg);
  const auto p = make_pulse(sub(cfg.config, "pulse"), cfg.base_dir());
  em.pulse_file("pulse", p);
  const auto gd = pulse::group_delay(p);
  em.table("spectrum", "spectral magnitude, phase and group delay", {"pulse spectrum"},
           {"omega_eV", "magnitude", "phase_rad", "group_delay_as"},
           {eV(p.grid().points()), as_double(std::vector<double>(p.magnitude().begin(), p.magnitude().end())),
            std::vector<double>(p.phase().begin(), p.phase().end()), as(gd)});

  const double hw = cfg.config.value("time_half_width_fs", au_to_fs(streak::default_half_width(p)));
  const double step = 2.0 * pi / p.grid().back() / 8.0;
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(2.0 * fs_to_au(hw) / step) + 1, 8001);
  const auto f = pulse::to_time_domain(p, pulse::uniform_times(-fs_to_au(hw), fs_to_au(hw), n));
  std::vector<double> t_fs(f.times.size());
  for (std::size_t i = 0; i < t_fs.size(); ++i) t_fs[i] = au_to_fs(f.times[i]);
  em.table("field", "time-domain field", {"E(t) = (1/pi) Re Integral_0^inf E(w) exp(-i w t) dw"}, {"time_fs", "field"},
           {t_fs, f.values});
  em.json_file("summary", {{"centroid_eV", au_to_eV(pulse::centroid_frequency(p))},
                           {"fwhm_eV", au_to_eV(pulse::intensity_fwhm(p))},
                           {"group_delay_spread_as", au_to_as(pulse::group_delay_spread(p))},
                           {"spectral_energy", pulse::spectral_energy(p)},
                           {"temporal_energy", pulse::temporal_energy(f)}});
  return em.finish();
}

std::vector<fs::path> panda_sim(const ScenarioConfig& cfg) {
  Emitter em(cfg);
  const auto& c = cfg.config;
  const auto p = make_pulse(sub(c, "pulse"), cfg.base_dir());
  const auto w = make_wavepacket(c.contains("wave_packet") ? c["wave_packet"] : default_wavepacket());
  const auto energies = panda_energies(c, w, p, 0.5);
  const auto ch = make_channels(c.contains("channels") ? c["channels"] : json("hydrogenic"), w, energies, cfg.base_dir());
  if (c.contains("fano")) throw ConfigurationError("panda-sim: use fano-check for Fano dressing");
  const auto delays = make_delays(sub(c, "delays"), w);
  std::optional<double> theta;
  if (c.contains("theta_deg")) theta = deg_to_rad(c["theta_deg"].get<double>());

  auto s = model::spectrogram(w, p, ch, energies, delays, theta);
  const double sigma = c.value("noise", 0.0);
  if (sigma > 0.0) model::add_noise(s, sigma, cfg.seed.value_or(0));
  s.meta["compatibility"] = compatibility_json(wavepacket::validate_against_pulse(w, p));
  const auto curve = model::panda_delay(s, c.value("threshold", model::contrast_threshold));
  em.spectrogram("spectrogram", s, &curve);
  delay_table(em, curve, s.effective_binding, "PANDA delay from the fitted beat phase");
  return em.finish();
}

std::vector<fs::path> panda_retrieve(const ScenarioConfig& cfg) {
  Emitter em(cfg);
  const auto& c = cfg.config;
  if (!c.contains("spectrogram")) throw ConfigurationError("panda-retrieve needs 'spectrogram' (path to the CSV)");
  fs::path sp = c["spectrogram"].get<std::string>();
  if (!sp.is_absolute()) sp = cfg.base_dir() / sp;
  const auto s = io::read_spectrogram(sp);
  if (s.kind != "panda") throw ConfigurationError("panda-retrieve needs a PANDA spectrogram");

  retrieval::RetrievalOptions opt;
  opt.threshold = c.value("threshold", opt.threshold);
  opt.fold_branches = c.value("fold_branches", true);
  opt.zero_ref = as_to_au(c.value("zero_ref_as", 0.0));
  if (c.contains("anchor_eV")) opt.anchor = eV_to_au(c["anchor_eV"].get<double>());
  opt.phi0 = c.value("phi0_rad", 0.0);
  auto r = retrieval::retrieve(s, opt);

  json j = io::retrieval_to_json(r);
  if (c.contains("truth_pulse")) {
    const auto truth = make_pulse(c["truth_pulse"], cfg.base_dir());
    const auto cmp = retrieval::compare(truth, r);
    r.rms_error_vs_truth = cmp.rms;
    j = io::retrieval_to_json(r);
    j["comparison"] = {{"rms_as", au_to_as(cmp.rms)},
                       {"offset_as", au_to_as(cmp.offset)},
                       {"max_abs_as", au_to_as(cmp.max_abs)},
                       {"truth_span_as", au_to_as(cmp.truth_span)},
                       {"columns", cmp.count}};
    const auto gd = pulse::group_delay(truth);
    std::vector<double> truth_gd(r.omega.size(), std::nan(""));
    for (std::size_t i = 0; i < r.omega.size(); ++i) {
      if (!truth.grid().contains(r.omega[i])) continue;
      const std::size_t k = truth.grid().interval(r.omega[i]);
      const double t = (r.omega[i] - truth.grid()[k]) / (truth.grid()[k + 1] - truth.grid()[k]);
      truth_gd[i] = au_to_as(gd[k] + t * (gd[k + 1] - gd[k]) + cmp.offset);
    }
    em.table("gd_vs_truth", "retrieved vs true group delay", {"truth shifted by the fitted constant offset"},
             {"omega_eV", "retrieved_as", "truth_as"}, {eV(r.omega), as(r.group_delay), truth_gd});
  }
  em.json_file("retrieval", j);
  if (cfg.format == "csv") {
    const auto path = cfg.out / "retrieval.csv";
    io::write_retrieval_csv(path, r);
    em.file(path);
  }
  return em.finish();
}

std::vector<fs::path> panda_anglemap(const ScenarioConfig& cfg) {
  Emitter em(cfg);
  const auto& c = cfg.config;
  const auto p = make_pulse(c.contains("pulse") ? c["pulse"] : json{{"shape", "flat"}}, cfg.base_dir());
  const auto w = make_wavepacket(c.contains("wave_packet") ? c["wave_packet"] : default_wavepacket());
  const auto energies = panda_energies(c, w, p, 0.5);
  const auto ch = make_channels(c.contains("channels") ? c["channels"] : json("hydrogenic"), w, energies, cfg.base_dir());
  const auto th = sub(c, "theta");
  const double lo = th.value("lo_deg", 0.0);
  const double hi = th.value("hi_deg", 90.0);
  const double step = th.value("step_deg", 2.0);
  const double dw = wavepacket::splitting(w);

  std::vector<double> thetas;
  for (double t = lo; t <= hi + 1e-9; t += step) thetas.push_back(t);
  std::vector<model::BeatTerms> integrated(energies.size());
  for (std::size_t k = 0; k < energies.size(); ++k) integrated[k] = model::beat_terms(w, p, ch, energies[k]);
  std::vector<std::vector<double>> delay(thetas.size(), std::vector<double>(energies.size()));
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    std::vector<model::BeatTerms> terms(energies.size());
    for (std::size_t k = 0; k < energies.size(); ++k) {
      terms[k] = model::angle_resolved_terms(w, p, ch, energies[k], deg_to_rad(thetas[i]));
    }
    const auto curve = model::panda_delay(energies, terms, dw);
    for (std::size_t k = 0; k < energies.size(); ++k) delay[i][k] = au_to_as(curve.delay[k]);
  }
  em.matrix("anglemap", "angle-resolved PANDA delay (as)", "theta_deg", thetas, eV(energies), delay);

  std::vector<double> zero(energies.size(), std::nan(""));
  std::vector<double> integ(energies.size());
  const auto curve = model::panda_delay(energies, integrated, dw);
  for (std::size_t k = 0; k < energies.size(); ++k) {
    if (const auto z = model::zero_delay_angle(w, p, ch, energies[k], deg_to_rad(40.0), deg_to_rad(70.0))) {
      zero[k] = rad_to_deg(*z);
    }
    integ[k] = au_to_as(curve.delay[k]);
  }
  em.table("magic_angle", "zero-delay angle per energy", {"angle where the angle-resolved delay equals the integrated one"},
           {"energy_eV", "zero_delay_theta_deg", "integrated_delay_as"}, {eV(energies), zero, integ});
  return em.finish();
}

std::vector<fs::path> panda_so(const ScenarioConfig& cfg) {
  Emitter em(cfg);
  const auto& c = cfg.config;
  const json laser_default = {{"center_eV", 1.6135}, {"fwhm_eV", 0.05}, {"grid", {{"lo_eV", 1.3}, {"hi_eV", 1.9}, {"points", 1201}}}};
  const json xuv_default = {{"center_eV", 30.0}, {"fwhm_eV", 4.0}, {"grid", {{"lo_eV", 10.0}, {"hi_eV", 50.0}, {"points", 4001}}}};
  model::SOConfig so{make_pulse(c.contains("laser") ? c["laser"] : laser_default, cfg.base_dir())};
  const auto lv = sub(c, "levels");
  so.excitation_half = eV_to_au(lv.value("excitation_half_eV", 1.610));
  so.excitation_three_half = eV_to_au(lv.value("excitation_three_half_eV", 1.617));
  so.ground = eV_to_au(lv.value("ground_eV", -4.341));
  so.so_split = eV_to_au(lv.value("so_split_meV", 7.15517) * 1e-3);
  so.validate();
  auto xuv = make_pulse(c.contains("xuv") ? c["xuv"] : xuv_default, cfg.base_dir());
  if (c.contains("xuv_delay_fs")) xuv = pulse::apply_delay(xuv, fs_to_au(c["xuv_delay_fs"].get<double>()));
  const auto rad = sub(c, "radial");
  const model::SORadial radial{rad.value("s", 1.0), rad.value("d", 1.0), rad.value("p", 1.0)};

  const double lo = std::max(0.1, au_to_eV(xuv.grid().front() + so.level_three_half()));
  const double hi = au_to_eV(xuv.grid().back() + so.level_half());
  const auto energies = make_energies(sub(c, "energies"), lo, hi, 0.05);
  const auto spec = model::so_spectrum(so, xuv, radial, energies, c.value("two_m", 1));

  std::vector<double> closed(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const double ex = pulse::sample_magnitude(xuv, energies[i] - so.level_half());
    const double el = pulse::sample_magnitude(so.laser, so.level_half() - so.ground);
    closed[i] = ex * ex * el * el * model::so_closed_form(spec.theta[i], radial).total();
  }
  em.table("so_spectrum", "spin-orbit PANDA spectrum",
           {"channels: s_1/2, d_3/2, d_5/2 summed incoherently", "closed_form uses |E| at the j'=1/2 path"},
           {"energy_eV", "theta_rad", "total", "s_half", "d_three_half", "d_five_half", "closed_form", "xuv_warning"},
           {eV(energies), spec.theta, spec.total, spec.s_half, spec.d_three_half, spec.d_five_half, closed,
            as_double(spec.xuv_warning)});
  em.json_file("so_summary", {{"so_split_meV", au_to_eV(so.so_split) * 1e3},
                              {"beat_period_fs", au_to_fs(2.0 * pi / so.so_split)},
                              {"laser_warning", spec.laser_warning},
                              {"warnings", spec.warnings}});
  return em.finish();
}

std::vector<fs::path> streak_sim(const ScenarioConfig& cfg) {
  Emitter em(cfg);
  const auto& c = cfg.config;
  const json xuv_default = {{"center_eV", 100.0}, {"fwhm_eV", 9.12}};
  const auto xuv = make_pulse(c.contains("xuv") ? c["xuv"] : xuv_default, cfg.base_dir());
  const auto lc = sub(c, "laser");
  streak::LaserField laser;
  laser.amplitude = lc.value("A0_au", 0.1);
  laser.omega = nm_to_omega_au(lc.value("wavelength_nm", 800.0));
  laser.fwhm = fs_to_au(lc.value("fwhm_fs", 5.0));
  laser.cep = lc.value("cep_rad", 0.0);
  laser.validate();
  const double ip = eV_to_au(c.value("ip_eV", 13.605693122994));

  const double wc = pulse::centroid_frequency(xuv);
  const double bw = pulse::intensity_fwhm(xuv);
  if (!(wc > ip)) throw ConfigurationError("XUV centroid is below the ionization potential");
  const double p0 = std::sqrt(2.0 * (wc - ip));
  const double lo = std::max(0.5 * (p0 - laser.amplitude) * (p0 - laser.amplitude) - 2.0 * bw, eV_to_au(0.5));
  const double hi = 0.5 * (p0 + laser.amplitude) * (p0 + laser.amplitude) + 2.0 * bw;
  const auto energies = make_energies(sub(c, "energies"), au_to_eV(lo), au_to_eV(hi), 0.25);

  const double period = 2.0 * pi / laser.omega;
  const auto dc = sub(c, "delays");
  const double dlo = dc.value("lo_fs", -au_to_fs(period));
  const double dhi = dc.value("hi_fs", au_to_fs(period));
  const int count = dc.value("count", 41);
  if (count < 2 || !(dhi > dlo)) throw ConfigurationError("delays need hi_fs > lo_fs and count >= 2");
  std::vector<double> delays(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) delays[static_cast<std::size_t>(i)] = fs_to_au(dlo + (dhi - dlo) * i / (count - 1));

  streak::StreakOptions opt;
  if (!c.contains("matrix_element") || c["matrix_element"].is_number()) opt.matrix_element = c.value("matrix_element", 1.0);
  auto s = streak::streak_spectrogram(xuv, laser, ip, energies, delays, opt);
  em.spectrogram("streak", s, nullptr);

  const auto cen = streak::centroids(s);
  std::vector<double> classical(delays.size());
  std::vector<double> al(delays.size());
  std::vector<double> d_fs(delays.size());
  for (std::size_t i = 0; i < delays.size(); ++i) {
    classical[i] = au_to_eV(streak::classical_energy(p0, laser, delays[i]));
    al[i] = laser.vector_potential(delays[i]);
    d_fs[i] = au_to_fs(delays[i]);
  }
  em.table("centroids", "energy centroid vs delay", {"classical = (p0 - A_L(t0))^2 / 2 with p0 from the XUV centroid"},
           {"delay_fs", "centroid_eV", "classical_eV", "A_L_au"}, {d_fs, eV(cen), classical, al});
  return em.finish();
}

std::vector<fs::path> atom_xsec(const ScenarioConfig& cfg) {
  Emitter em(cfg);
  const auto& c = cfg.config;
  const auto pc = sub(c, "potential");
  const atomic::CentralPotential pot{pc.value("Z", 1.0), pc.value("a", 0.0), pc.value("b", 1.0)};
  pot.validate();
  const auto oc = sub(c, "orbital");
  const int n = oc.value("n", 1);
  const int l = oc.value("l", 0);

  const auto photon = make_energies(sub(c, "photon_energies"), 20.0, 800.0, 10.0);
  const double r_max = c.value("r_max", 200.0);
  const auto grid = atomic::RadialGrid::for_energy(photon.back(), r_max);
  const auto orbital = atomic::solve_bound(pot, n, l, grid);
  std::vector<double> eps;
  for (double w : photon) {
    if (w + orbital.energy > 0.0) eps.push_back(w + orbital.energy);
  }
  if (eps.size() < 2) throw ConfigurationError("photon energies do not reach the continuum");
  const auto table = atomic::ChannelTable::from_potential(pot, orbital, 0, eps, grid);

  std::vector<double> sigma(eps.size());
  std::vector<double> w_eV(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    std::vector<double> radial(static_cast<std::size_t>(l + 2), 0.0);
    for (const auto& ch : table.channels()) radial[static_cast<std::size_t>(ch.L)] = ch.radial[i];
    const double w = eps[i] - orbital.energy;
    w_eV[i] = au_to_eV(w);
    sigma[i] = atomic::cross_section_Mb(w, l, radial);
  }
  em.table("xsec", "photoionization cross section",
           {fmt::format("orbital n={} l={} energy {:.10g} eV", n, l, au_to_eV(orbital.energy))},
           {"photon_eV", "electron_eV", "sigma_Mb"}, {w_eV, eV(eps), sigma});
  if (cfg.format == "csv") {
    io::write_channel_table(cfg.out / "channels.csv", table);
    em.file(cfg.out / "channels.csv");
  }

  // log-log slope over a photon window
  const auto sw = sub(c, "slope_window");
  const double s_lo = sw.value("lo_eV", 300.0);
  const double s_hi = sw.value("hi_eV", 800.0);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (w_eV[i] < s_lo - 1e-9 || w_eV[i] > s_hi + 1e-9 || !(sigma[i] > 0.0)) continue;
    const double x = std::log(w_eV[i]);
    const double y = std::log(sigma[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  json summary = {{"bound_energy_eV", au_to_eV(orbital.energy)}, {"grid_step", grid.step()}, {"r_max", grid.r_max()}};
  if (m >= 2) summary["loglog_slope"] = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  summary["slope_window_eV"] = {s_lo, s_hi};
  em.json_file("xsec_summary", summary);
  return em.finish();
}

std::vector<fs::path> fano_check(const ScenarioConfig& cfg) {
  Emitter em(cfg);
  const auto& c = cfg.config;
  const auto p = make_pulse(sub(c, "pulse"), cfg.base_dir());
  const auto w = make_wavepacket(c.contains("wave_packet") ? c["wave_packet"] : default_wavepacket());
  const auto energies = panda_energies(c, w, p, 0.5);
  const auto ch = make_channels(c.contains("channels") ? c["channels"] : json("hydrogenic"), w, energies, cfg.base_dir());
  const auto fc = sub(c, "fano");
  const double er = eV_to_au(fc.value("resonance_eV", au_to_eV(energies[energies.size() / 2])));
  const double width = eV_to_au(fc.value("width_eV", 1.0));
  const atomic::FanoParams f1{fc.value("q1", 2.0), er, width};
  const atomic::FanoParams f2{fc.value("q2", -1.5), er, width};
  const model::PacketChannels dressed{ch.first.with_fano(f1), ch.second.with_fano(f2)};

  const auto delays = make_delays(sub(c, "delays"), w);
  const auto plain = model::panda_delay(model::spectrogram(w, p, ch, energies, delays));
  const auto fano = model::panda_delay(model::spectrogram(w, p, dressed, energies, delays));
  std::vector<double> diff(energies.size());
  std::vector<double> shape1(energies.size());
  std::vector<double> shape2(energies.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    diff[i] = fano.phase[i] - plain.phase[i];
    shape1[i] = atomic::fano_lineshape(f1, energies[i]);
    shape2[i] = atomic::fano_lineshape(f2, energies[i]);
    if (!plain.mask[i] && !fano.mask[i]) worst = std::max(worst, std::abs(diff[i]));
  }
  em.table("fano", "beat phase with and without Fano dressing", {"phases folded into (-pi/2, pi/2]"},
           {"energy_eV", "phase_plain_rad", "phase_fano_rad", "difference_rad", "branch_plain", "branch_fano",
            "lineshape1", "lineshape2"},
           {eV(energies), plain.phase, fano.phase, diff, as_double(plain.branch), as_double(fano.branch), shape1, shape2});
  em.json_file("fano_summary", {{"max_abs_phase_change_rad", worst},
                                {"q1", f1.q},
                                {"q2", f2.q},
                                {"resonance_eV", au_to_eV(er)},
                                {"width_eV", au_to_eV(width)}});
  return em.finish();
}

}  // namespace

std::vector<fs::path> run(const ScenarioConfig& cfg) {
  cfg.validate();
  static const std::map<std::string, std::function<std::vector<fs::path>(const ScenarioConfig&)>> table = {
      {"pulse-synth", pulse_synth}, {"panda-sim", panda_sim},   {"panda-retrieve", panda_retrieve},
      {"panda-anglemap", panda_anglemap}, {"panda-so", panda_so}, {"streak-sim", streak_sim},
      {"atom-xsec", atom_xsec},     {"fano-check", fano_check}};
  return table.at(cfg.command)(cfg);
}

}  // namespace panda::cli
