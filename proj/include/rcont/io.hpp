#pragma once

#include "rcont/analysis.hpp"
#include "rcont/certify.hpp"
#include "rcont/solvers.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace rcont {

using Json = nlohmann::ordered_json;

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// sigma,rho_hat,samples
std::string modulus_csv(const ModulusCurve& curve);

/// k, x components, delta, f_value, witness_norm, xi, distance, fejer_ledger.
/// Cells without data are empty.
std::string trace_csv(const IterateTrace& trace, const std::vector<double>* distances = nullptr);

Json to_json(const HolderFit& fit);
Json to_json(const Certificate& cert);
Json to_json(const LojFit& fit);
Json to_json(const PlkResult& res);
Json to_json(const ClosedGraphResult& res);
Json to_json(const DistanceVerdict& v);
Json to_json(const InverseLipschitzResult& res);
Json to_json(const Point& p);

const char* to_string(Verdict v);

/// Every catalog entry with dimensions, flags and available oracles.
Json catalog_json();

}  // namespace rcont
