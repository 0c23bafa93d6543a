#pragma once

#include <cstddef>

#include "json.hpp"
#include "uniconc/polynomial.hpp"
#include "uniconc/spectral.hpp"
#include "uniconc/system.hpp"

namespace uniconc {

using Json = nlohmann::ordered_json;

struct AnalysisOptions {
    Rational precision = default_precision();
    std::size_t series_order = 10;
};

Json system_json(const ConcurrentSystem& sys);
Json classification_json(const ConcurrentSystem& sys, const SystemClassification& cls);

/// Full analysis as one JSON document with a fixed key order. Analysis-level failures do not
/// throw; each is recorded under "errors" with the stage that raised it.
Json analysis_report(const ConcurrentSystem& sys, const AnalysisOptions& options = {});

}  // namespace uniconc
