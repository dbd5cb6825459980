#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "panda/model.hpp"
#include "panda/pulse.hpp"
#include "panda/wavepacket.hpp"

namespace panda::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_computation = 3;

const std::vector<std::string>& commands();

struct ScenarioConfig {
  std::string command;
  std::filesystem::path config_path;  // empty: defaults only
  nlohmann::json config = nlohmann::json::object();
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;
  std::string format = "csv";

  // Throws ConfigurationError for an unknown command or format.
  void validate() const;
  std::filesystem::path base_dir() const;
  std::string hash() const;
};

// Runs one scenario; returns the written artifact paths. Library errors
// propagate.
std::vector<std::filesystem::path> run(const ScenarioConfig& cfg);

// argv front end: parses flags, runs, maps errors to exit codes and writes a
// JSON error object to stderr.
int main(int argc, char** argv);

// Exit code for the exception currently being handled.
int exit_code_for(const std::exception& e);
nlohmann::json error_json(const std::exception& e);

struct Artifact {
  std::string kind;  // spectrogram, curves, anglemap, pulse
  std::filesystem::path path;
  std::string title;
};

// Matplotlib script that only reads the listed files (by file name, relative
// to the script). Throws DomainError for an empty list and FileError for a
// missing file.
std::string emit_plot_script(const std::vector<Artifact>& artifacts);

// Config pieces, shared with the tests. Units at this boundary: eV, fs, as,
// as^2, degrees.
pulse::SpectralPulse make_pulse(const nlohmann::json& j, const std::filesystem::path& base);
wavepacket::WavePacket make_wavepacket(const nlohmann::json& j);
std::vector<double> make_energies(const nlohmann::json& j, double lo_eV, double hi_eV, double step_eV);
std::vector<double> make_delays(const nlohmann::json& j, const wavepacket::WavePacket& w);
model::PacketChannels make_channels(const nlohmann::json& j, const wavepacket::WavePacket& w,
                                    std::span<const double> energies, const std::filesystem::path& base);

}  // namespace panda::cli
