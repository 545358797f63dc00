#include "cohrank/serialization.hpp"

#include <string>

namespace cohrank {

namespace {

Json interleave(const Complex* data, Index count) {
  Json arr = Json::array();
  for (Index i = 0; i < count; ++i) {
    arr.push_back(data[i].real());
    arr.push_back(data[i].imag());
  }
  return arr;
}

std::vector<Complex> deinterleave(const Json& arr, std::size_t expected, const char* field) {
  if (!arr.is_array() || arr.size() != 2 * expected) {
    throw ParseError(std::string("\"") + field + "\" must be an array of " +
                     std::to_string(2 * expected) + " numbers");
  }
  std::vector<Complex> out(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    const Json& re = arr[2 * i];
    const Json& im = arr[2 * i + 1];
    if (!re.is_number() || !im.is_number()) {
      throw ParseError(std::string("\"") + field + "\" contains a non-numeric value");
    }
    out[i] = {re.get<double>(), im.get<double>()};
  }
  return out;
}

Index read_dim(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer()) {
    throw ParseError("expected an object with integer \"dim\"");
  }
  const auto dim = j["dim"].get<long long>();
  if (dim < 1 || dim > 1 << 16) throw ParseError("\"dim\" out of range");
  return static_cast<Index>(dim);
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m, std::optional<std::array<Index, 2>> dims) {
  require_square(m, "matrix_to_json");
  const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  Json j;
  j["dim"] = m.rows();
  if (dims) j["dims"] = {(*dims)[0], (*dims)[1]};
  j["entries"] = interleave(rm.data(), rm.size());
  return j;
}

ParsedMatrix matrix_from_json(const Json& j) {
  const Index dim = read_dim(j);
  if (!j.contains("entries")) throw ParseError("matrix is missing \"entries\"");
  const auto values = deinterleave(j["entries"], static_cast<std::size_t>(dim * dim), "entries");
  ParsedMatrix out;
  out.matrix.resize(dim, dim);
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c) out.matrix(r, c) = values[r * dim + c];
  if (j.contains("dims")) {
    const Json& d = j["dims"];
    if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() ||
        !d[1].is_number_integer()) {
      throw ParseError("\"dims\" must be two integers");
    }
    const std::array<Index, 2> dims{d[0].get<Index>(), d[1].get<Index>()};
    if (dims[0] < 1 || dims[1] < 1 || dims[0] * dims[1] != dim) {
      throw ParseError("\"dims\" do not multiply to \"dim\"");
    }
    out.dims = dims;
  }
  return out;
}

DensityMatrix density_from_json(const Json& j, const Tolerances& tol) {
  return DensityMatrix::from_matrix(matrix_from_json(j).matrix, tol);
}

Json pure_state_to_json(const PureState& psi) {
  Json j;
  j["dim"] = psi.dim();
  j["amplitudes"] = interleave(psi.amplitudes().data(), psi.dim());
  return j;
}

PureState pure_state_from_json(const Json& j, const Tolerances& tol) {
  const Index dim = read_dim(j);
  if (!j.contains("amplitudes")) throw ParseError("state is missing \"amplitudes\"");
  const auto values = deinterleave(j["amplitudes"], static_cast<std::size_t>(dim), "amplitudes");
  ComplexVector a(dim);
  for (Index i = 0; i < dim; ++i) a(i) = values[i];
  return PureState::from_amplitudes(std::move(a), tol);
}

Json ensemble_to_json(const WeightedEnsemble& ens) {
  Json members = Json::array();
  for (const auto& m : ens.members()) {
    members.push_back({{"weight", m.weight}, {"state", pure_state_to_json(m.state)}});
  }
  return {{"target_dim", ens.target_dim()}, {"members", std::move(members)}};
}

WeightedEnsemble ensemble_from_json(const Json& j, const Tolerances& tol) {
  if (!j.is_object() || !j.contains("target_dim") || !j.contains("members") ||
      !j["members"].is_array()) {
    throw ParseError("ensemble needs \"target_dim\" and a \"members\" array");
  }
  std::vector<EnsembleMember> members;
  for (const Json& m : j["members"]) {
    if (!m.contains("weight") || !m["weight"].is_number() || !m.contains("state")) {
      throw ParseError("ensemble member needs numeric \"weight\" and \"state\"");
    }
    members.push_back({m["weight"].get<double>(), pure_state_from_json(m["state"], tol)});
  }
  return WeightedEnsemble(std::move(members), j["target_dim"].get<Index>());
}

Json report_to_json(const EnsembleReport& r) {
  return {{"reconstruction_trace_distance", r.reconstruction_trace_distance},
          {"max_member_rank", r.max_member_rank},
          {"weight_sum", r.weight_sum},
          {"feasible", r.feasible}};
}

Json report_to_json(const CptpReport& r) {
  return {{"min_choi_eigenvalue", r.min_choi_eigenvalue},
          {"psd_slack", r.psd_slack},
          {"partial_trace_error", r.partial_trace_error},
          {"passed", r.passed}};
}

Json report_to_json(const CovarianceReport& r) {
  return {{"max_violation", r.max_violation},
          {"basis_size", r.basis_size},
          {"passed", r.passed}};
}

Json certificate_to_json(const RankCertificate& c) {
  Json j;
  j["lower"] = c.lower;
  j["upper"] = c.upper ? Json(*c.upper) : Json(nullptr);
  j["lower_method"] = to_string(c.lower_method);
  j["upper_method"] = to_string(c.upper_method);
  j["exact"] = c.exact();
  return j;
}

Json cost_report_to_json(const CostReport& r) {
  Json j;
  j["alpha"] = r.alpha;
  j["n"] = r.copies;
  j["zero_error"] = {{"lower", r.zero_error_lower},
                     {"upper", r.zero_error_upper},
                     {"certified", r.zero_error_certified}};
  j["certified_rank"] = r.certified_rank ? Json(*r.certified_rank) : Json(nullptr);
  j["regularized_lower"] = r.regularized_lower;
  j["regularized_upper"] = r.regularized_upper;
  j["asymptotic_ec"] = r.asymptotic_ec ? Json(*r.asymptotic_ec) : Json(nullptr);
  return j;
}

Json channel_to_json(const DioChannel& ch) {
  Json j;
  j["input_dim"] = ch.input_dim();
  j["output_dim"] = ch.output_dim();
  j["choi"] = matrix_to_json(ch.choi(), std::array<Index, 2>{ch.input_dim(), ch.output_dim()});
  j["components"] = {{"A", matrix_to_json(ch.component_a())},
                     {"B", matrix_to_json(ch.component_b())},
                     {"D", matrix_to_json(ch.component_d())},
                     {"Z", matrix_to_json(ch.component_z())}};
  return j;
}

ChoiChannel choi_channel_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("input_dim") || !j.contains("output_dim") ||
      !j.contains("choi")) {
    throw ParseError("channel needs \"input_dim\", \"output_dim\" and \"choi\"");
  }
  ChoiChannel ch;
  ch.input_dim = j["input_dim"].get<Index>();
  ch.output_dim = j["output_dim"].get<Index>();
  ch.choi = matrix_from_json(j["choi"]).matrix;
  if (ch.input_dim < 1 || ch.output_dim < 1 || ch.choi.rows() != ch.input_dim * ch.output_dim) {
    throw ParseError("Choi matrix dimension does not match input_dim * output_dim");
  }
  return ch;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace cohrank
