#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "panda/atomic/channels.hpp"
#include "panda/model.hpp"
#include "panda/pulse.hpp"
#include "panda/retrieval.hpp"
#include "panda/wavepacket.hpp"

// File formats. Numbers are written with 17 significant digits so that a
// write/read cycle is exact and identical inputs give identical bytes.
namespace panda::io {

std::string_view version();

// 64-bit FNV-1a, lower-case hex
std::string fnv1a_hex(std::string_view data);

struct Provenance {
  std::string command;
  std::string config_hash;
  std::optional<std::uint64_t> seed;
  nlohmann::json to_json() const;
};

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);
nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

// {grid_au: [...], magnitude: [...], phase_rad: [...], cep_rad: x}
nlohmann::json pulse_to_json(const pulse::SpectralPulse& p);
pulse::SpectralPulse pulse_from_json(const nlohmann::json& j);

// {states: [{n, l, m, j?, energy_eV, amplitude}], lifetime_inv}; amplitudes
// are rescaled to c1^2 + c2^2 = 1.
nlohmann::json wavepacket_to_json(const wavepacket::WavePacket& w);
wavepacket::WavePacket wavepacket_from_json(const nlohmann::json& j);

// CSV matrix, rows = delays, columns = energies, '#' header lines, plus
// <csv minus extension>.json with grids (eV, fs and a.u.), descriptors,
// delay-zero convention, branch tags, mask flags and provenance.
void write_spectrogram(const std::filesystem::path& csv, const model::Spectrogram& s, const Provenance& prov,
                       const model::DelayCurve* curve = nullptr);
model::Spectrogram read_spectrogram(const std::filesystem::path& csv);
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

// epsilon_au, L, radial_integral, eta_L
void write_channel_table(const std::filesystem::path& csv, const atomic::ChannelTable& t);
atomic::ChannelTable read_channel_table(const std::filesystem::path& csv, int l, int m);

nlohmann::json retrieval_to_json(const retrieval::RetrievalResult& r);
void write_retrieval_csv(const std::filesystem::path& csv, const retrieval::RetrievalResult& r);

// Plain table with a '#' comment block and a header row.
void write_table(const std::filesystem::path& csv, const std::vector<std::string>& comments,
                 const std::vector<std::string>& names, const std::vector<std::vector<double>>& columns);

// Numeric rows of a CSV file, '#' lines and a non-numeric header skipped.
std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& csv);

std::string format_number(double v);

}  // namespace panda::io
