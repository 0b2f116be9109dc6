#include "subqfi/io.hpp"

#include <fstream>
#include <sstream>

namespace subqfi {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re"))
      raise(Errc::bad_input, "matrix JSON requires 'dim' and 're' fields");
    const auto dim = j.at("dim").get<Eigen::Index>();
    if (dim < 1) raise(Errc::bad_input, "matrix dim must be positive");
    const json& re = j.at("re");
    const bool has_im = j.contains("im");
    const json* im = has_im ? &j.at("im") : nullptr;
    if (!re.is_array() || re.size() != static_cast<std::size_t>(dim) ||
        (has_im && (!im->is_array() || im->size() != static_cast<std::size_t>(dim))))
      raise(Errc::bad_input, "matrix rows do not match dim");

    ComplexMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const json& re_row = re.at(static_cast<std::size_t>(i));
      if (!re_row.is_array() || re_row.size() != static_cast<std::size_t>(dim))
        raise(Errc::bad_input, "matrix row length does not match dim");
      for (Eigen::Index k = 0; k < dim; ++k) {
        const double real = re_row.at(static_cast<std::size_t>(k)).get<double>();
        double imag = 0.0;
        if (has_im)
          imag = im->at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>();
        m(i, k) = Complex(real, imag);
      }
    }
    return m;
  } catch (const json::exception& e) {
    raise(Errc::bad_input, std::string("malformed matrix JSON: ") + e.what());
  }
}

ComplexMatrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_failure, "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(Errc::bad_input, "malformed JSON in '" + path + "': " + e.what());
  }
  return matrix_from_json(j);
}

DensityMatrix read_density(const std::string& path) {
  return DensityMatrix::validated(read_matrix(path));
}

HermitianGenerator read_generator(const std::string& path) {
  return HermitianGenerator::validated(read_matrix(path));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) raise(Errc::io_failure, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) raise(Errc::io_failure, "failed writing '" + path + "'");
}

json to_json(const FisherReport& report) {
  json methods = json::object();
  for (const auto& [name, value] : report.method_values) methods[name] = value;
  json j{{"qfi", report.qfi},
         {"sub_qfi", report.sub_qfi},
         {"skew_info", report.skew_info},
         {"method_values", std::move(methods)},
         {"bound_chain_ok", report.bound_chain_ok},
         {"chain_tol", report.chain_tol}};
  if (report.sld) j["sld"] = matrix_to_json(*report.sld);
  return j;
}

json to_json(const EstimateWithError& estimate) {
  json j{{"value", estimate.value},
         {"std_error", estimate.std_error},
         {"shots", estimate.shots},
         {"radicand_clamped", estimate.radicand_clamped}};
  if (estimate.bias_note) j["bias_note"] = *estimate.bias_note;
  return j;
}

json to_json(const PurityLossResult& result) {
  return json{{"delta_gamma", result.delta_gamma},
              {"delta_x", result.delta_x},
              {"ratio", result.ratio},
              {"nodes", result.nodes},
              {"rho_ave", matrix_to_json(result.rho_ave.matrix())}};
}

json to_json(const OptimizationTrace& trace) {
  return json{{"best_value", trace.best_value},
              {"best_restart", trace.best_restart},
              {"restarts_used", trace.restarts_used},
              {"converged", trace.converged},
              {"closed_form_max", trace.closed_form_max},
              {"iterations", trace.iterations.size()},
              {"best_params", std::vector<double>(trace.best_params.values.begin(),
                                                  trace.best_params.values.end())}};
}

std::string trace_to_csv(const OptimizationTrace& trace) {
  std::ostringstream out;
  out << "step,objective,grad_norm,restart\n";
  out.precision(17);
  for (const TraceEntry& e : trace.iterations)
    out << e.step << ',' << e.objective << ',' << e.grad_norm << ',' << e.restart << '\n';
  return out.str();
}

}  // namespace subqfi
