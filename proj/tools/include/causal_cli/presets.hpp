#pragma once

#include <span>
#include <string_view>

namespace causal::cli {

struct PresetEntry {
  std::string_view id;
  std::string_view yaml;
};

/// Built-in figure presets, sorted by id.
std::span<const PresetEntry> presets() noexcept;
const PresetEntry* find_preset(std::string_view id) noexcept;

}  // namespace causal::cli
