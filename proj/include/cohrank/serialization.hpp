#pragma once

// JSON forms of matrices, states, ensembles and channels.
//
// Matrix schema: {"dim": n, "entries": [re0, im0, re1, im1, ...]} in row-major
// order; bipartite states add "dims": [dA, dB]. Pure states use
// {"dim": n, "amplitudes": [re0, im0, ...]}.

#include <array>
#include <optional>

#include <json.hpp>

#include "cohrank/bounds.hpp"
#include "cohrank/channels.hpp"
#include "cohrank/decompositions.hpp"

namespace cohrank {

using Json = nlohmann::json;

struct ParsedMatrix {
  ComplexMatrix matrix;
  std::optional<std::array<Index, 2>> dims;
};

Json matrix_to_json(const ComplexMatrix& m,
                    std::optional<std::array<Index, 2>> dims = std::nullopt);
/// Throws ParseError on schema violations.
ParsedMatrix matrix_from_json(const Json& j);
/// Parses and validates a density matrix.
DensityMatrix density_from_json(const Json& j, const Tolerances& tol = {});

Json pure_state_to_json(const PureState& psi);
PureState pure_state_from_json(const Json& j, const Tolerances& tol = {});

Json ensemble_to_json(const WeightedEnsemble& ens);
WeightedEnsemble ensemble_from_json(const Json& j, const Tolerances& tol = {});

Json report_to_json(const EnsembleReport& r);
Json report_to_json(const CptpReport& r);
Json report_to_json(const CovarianceReport& r);
Json certificate_to_json(const RankCertificate& c);
Json cost_report_to_json(const CostReport& r);

/// Choi matrix and the A, B, D, Z components.
Json channel_to_json(const DioChannel& ch);
ChoiChannel choi_channel_from_json(const Json& j);

/// Parses text, mapping nlohmann parse failures to ParseError.
Json parse_json(const std::string& text);

}  // namespace cohrank
