#pragma once

#include <filesystem>
#include <string>

#include "adwords/instance.hpp"

namespace adwords {

struct LoadOptions {
  // laminar mode only
  bool synthesize_singletons = true;
  bool validate = true;
};

/// Parses the JSON instance format. Money values are strings ("0.25", "1/4");
/// plain JSON integers are accepted too. Throws ValidationError on malformed
/// input or, when requested, on validation failures.
Instance parse_instance(const std::string& text, const LoadOptions& options = {});
Instance load_instance(const std::filesystem::path& path, const LoadOptions& options = {});

/// Deterministic serialization: object keys sorted, money in "p" / "p/q".
std::string serialize_instance(const Instance& instance);
void save_instance(const Instance& instance, const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace adwords
