#include "wheelep/report.hpp"

#include <charconv>
#include <cmath>

namespace wheelep {

std::optional<double> empirical_gamma(int nu, int tau) {
    if (nu < 1) return std::nullopt;
    return tau / (nu * std::log2(nu + 1.0));
}

std::string format_real(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) return "nan";
    return std::string(buf, end);
}

nlohmann::json to_json(const Packing& p) {
    nlohmann::json models = nlohmann::json::array();
    for (const Model& m : p.models) models.push_back(to_json(m));
    return {{"value", p.value}, {"capped", p.capped}, {"models", models}};
}

nlohmann::json to_json(const Transversal& x) {
    return {{"value", x.value}, {"hitting_set", x.hitting_set.to_vector()}};
}

nlohmann::json to_json(const EpReport& r) {
    return {{"n", r.n},
            {"m", r.m},
            {"t", r.t},
            {"nu", r.nu},
            {"tau", r.tau},
            {"bound", r.bound},
            {"gamma", r.gamma},
            {"satisfied", r.satisfied},
            {"packing", to_json(r.packing)},
            {"transversal", to_json(r.transversal)},
            {"runtime_ms", r.runtime_ms}};
}

}  // namespace wheelep
