#pragma once

#include <string>

#include "curvetower/equisig.hpp"
#include "curvetower/infinity.hpp"
#include "curvetower/invariants.hpp"
#include "curvetower/tower.hpp"

namespace curvetower {

/// Analysis options shared by the CLI and the bindings.
struct AnalyzeOptions {
    bool with_table = false;
    bool with_diagram = false;
    bool timing = false;
    int max_precision_retries = 6;
};

/// Deterministic JSON report (schema_version 1): numerics are exact strings,
/// keys emitted in a fixed order.
std::string analyze_json(const BiPoly& f, const AnalyzeOptions& opts);
std::string analyze_text(const BiPoly& f, const AnalyzeOptions& opts);

std::string roots_text(const BiPoly& f, long index);
std::string intersect_text(const BiPoly& f, const BiPoly& g, bool with_oracle);
std::string equising_text_family(const BiPoly& f_qt);
std::string equising_text_deform(const BiPoly& f, long m);
std::string infinity_text(const BiPoly& F, bool ams, bool classify);
std::string generate_text(const std::vector<long>& weights);

}  // namespace curvetower
