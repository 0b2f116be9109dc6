#pragma once

#include <string>

#include "json.hpp"
#include "subqfi/fisher.hpp"
#include "subqfi/optimize.hpp"
#include "subqfi/sampling.hpp"
#include "subqfi/states.hpp"

namespace subqfi {

/// Matrix wire format: {"dim": d, "re": [[row-major]], "im": [[row-major]]}.
/// A missing "im" means an all-zero imaginary part.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// File helpers; throw io_failure when the file cannot be read or written and
/// bad_input on malformed JSON.
ComplexMatrix read_matrix(const std::string& path);
DensityMatrix read_density(const std::string& path);
HermitianGenerator read_generator(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

nlohmann::json to_json(const FisherReport& report);
nlohmann::json to_json(const EstimateWithError& estimate);
nlohmann::json to_json(const PurityLossResult& result);
nlohmann::json to_json(const OptimizationTrace& trace);  // summary without iterations

/// Per-iteration trace as CSV (step, objective, grad_norm, restart).
std::string trace_to_csv(const OptimizationTrace& trace);

}  // namespace subqfi
