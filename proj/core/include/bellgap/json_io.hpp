#pragma once

#include <string>
#include <vector>

#include "bellgap/functional.hpp"
#include "bellgap/solvers.hpp"
#include "bellgap/verify.hpp"

namespace bellgap::io {

// GameFile schema:
//   {"parties": k, "inputs": [N...], "outputs": [K...], "kind": str,
//    "coeffs": [{"x": [...], "a": [...], "v": float}, ...], "meta": {...}}
// Indices are 1-based on disk (0-based in memory); omitted coefficients are
// zero; correlation functionals omit "a". Coefficients are serialized as
// decimal strings with 17 significant digits so that save -> load is
// bit-exact.
std::string game_to_json(const BellFunctional& g);
BellFunctional game_from_json(const std::string& text);

void save_game(const BellFunctional& g, const std::string& path);
BellFunctional load_game(const std::string& path);

// ReportFile fragments. Certificates serialize the witness behaviour plus
// whichever descriptors the method attached.
std::string value_report_to_json(const solvers::ValueReport& report,
                                 double seconds);
std::string certificate_to_json(const solvers::Certificate& certificate);
std::string lv_report_to_json(const solvers::LVReport& report, double seconds);
std::string checks_to_json(const std::string& suite,
                           const std::vector<verify::CheckResult>& checks);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace bellgap::io
