#pragma once

#include <json.hpp>

#include "lslab/estimator.hpp"
#include "lslab/exponents.hpp"
#include "lslab/sobolev.hpp"

namespace lslab {

using Json = nlohmann::ordered_json;

Json to_json(const EstimateResult& r);
Json to_json(const ScalingFit& f);
Json to_json(const LojasiewiczEstimate& e);
Json to_json(const RescaleRecord& r);
Json to_json(const AnnulusLedger& l);

/// Exact reference value payload ("exact": true marks closed forms).
Json exact_value(double v);

Json domain_to_json(const PolyDomain& d, int dimension);
Json config_to_json(const SamplerConfig& cfg, int dimension);

}  // namespace lslab
