#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "wheelep/packing.hpp"

namespace wheelep {

/// tau / (nu log2(nu + 1)) for nu >= 1.
std::optional<double> empirical_gamma(int nu, int tau);

/// Shortest round-trip decimal form with '.' separator, independent of locale.
std::string format_real(double x);

nlohmann::json to_json(const Packing& p);
nlohmann::json to_json(const Transversal& x);
/// {n, m, t, nu, tau, bound, gamma, satisfied, packing, transversal, runtime_ms}
nlohmann::json to_json(const EpReport& r);

}  // namespace wheelep
