// io.hpp — channel / isometry documents (JSON) and sweep tables (CSV).
//
// Numbers are printed with up to 17 significant digits so a store/load round
// trip is bit-exact; identical inputs always serialize to identical bytes.
#pragma once

#include "chanlink/channel.hpp"
#include "chanlink/dilation.hpp"
#include "chanlink/fidelity.hpp"

#include <string>

namespace chanlink {

inline constexpr int kChannelSchemaVersion = 1;

std::string channel_to_json(const Channel& c);
Channel channel_from_json(const std::string& text);

std::string isometry_to_json(const Isometry& v);
Isometry isometry_from_json(const std::string& text);

// Header "n,fidelity", one row per n, then '#' footer lines carrying fid1,
// epsilon, n_tilde and the cross-check gap. Values use 12 significant digits.
std::string sweep_to_csv(const SweepResult& s);

void store_channel(const std::string& path, const Channel& c);
Channel load_channel(const std::string& path);
void store_isometry(const std::string& path, const Isometry& v);
Isometry load_isometry(const std::string& path);
void store_sweep(const std::string& path, const SweepResult& s);

} // namespace chanlink
