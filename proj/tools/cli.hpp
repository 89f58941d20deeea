// Command-line front end. run() is the whole program minus process plumbing,
// so tests can drive it in-process.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixsing/family.hpp"
#include "mixsing/series.hpp"

namespace mixsing::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchema = "mixsing-report/1";

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// --- I/O helpers shared with the tests -------------------------------------

/// File contents if `text_or_path` names a readable file, the argument itself
/// otherwise. Lines starting with '#' are dropped.
std::string read_text_or_file(const std::string& text_or_path);

Arc arc_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json arc_to_json(const Arc& arc);
/// "A_{1,2}", "C_{}" (1-based indices).
StratumDescriptor parse_stratum(const std::string& text);

/// Newton diagram of a two-variable polynomial.
std::string render_svg(const MixedPolynomial& f);

}  // namespace mixsing::cli
