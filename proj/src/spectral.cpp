#include "ballmodes/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <vector>

namespace ballmodes::spectral {

namespace {

/// Integer power by binary exponentiation; bounded relative error so that
/// p followed by -p round-trips to ~1e-15.
double ipow(double base, int p) {
    if (p < 0) return 1.0 / ipow(base, -p);
    double result = 1.0, b = base;
    unsigned e = static_cast<unsigned>(p);
    while (e != 0) {
        if (e & 1u) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

}  // namespace

bool family_matches(modes::Family f, Operator op) {
    if (op == Operator::GradDiv) return f == modes::Family::GradDiv;
    return f == modes::Family::CurlPlus || f == modes::Family::CurlMinus;
}

std::string operator_name(Operator op) { return op == Operator::Curl ? "curl" : "graddiv"; }

Operator operator_from_name(const std::string& name) {
    if (name == "curl") return Operator::Curl;
    if (name == "graddiv") return Operator::GradDiv;
    throw std::invalid_argument("unknown operator name: " + name);
}

modes::SpectralField apply_power(const modes::SpectralField& field, Operator op, int p) {
    if (p == 0) throw std::invalid_argument("apply_power: power must be nonzero");
    modes::SpectralField out;
    out.radius = field.radius;
    for (const auto& [idx, c] : field.coefficients) {
        if (!family_matches(idx.family, op))
            throw std::invalid_argument("apply_power: field holds a " +
                                        modes::family_name(idx.family) +
                                        " mode outside the " + operator_name(op) + " eigenbasis");
        const double eig = modes::eigenvalue_of(idx, field.radius);
        out.coefficients[idx] = c * ipow(eig, p);
    }
    return out;
}

void require_valid(const ScaleOrder& s) {
    if (s.op == Operator::GradDiv && s.order % 2 != 0)
        throw std::invalid_argument("scale order for the graddiv family must be even");
}

double scale_norm(const modes::SpectralField& field, const ScaleOrder& s) {
    require_valid(s);
    double acc = 0.0;
    for (const auto& [idx, c] : field.coefficients) {
        if (!family_matches(idx.family, s.op)) continue;
        const double mag = std::abs(modes::eigenvalue_of(idx, field.radius));
        // Curl: weight lambda_j^{2 order}. GradDiv: |eig| = nu^2 and the
        // stored order is the even exponent 2k, so weight nu^{4k} = |eig|^{2k}.
        const double w = ipow(mag, s.op == Operator::Curl ? 2 * s.order : s.order);
        acc += w * c * c;
    }
    return std::sqrt(acc);
}

namespace {

struct TailAccumulator {
    std::vector<std::pair<double, double>> terms;  // (|eigenvalue|, weighted mass)

    void add(double mag, double mass) { terms.emplace_back(mag, mass); }

    double total() const {
        double t = 0.0;
        for (const auto& [mag, mass] : terms) t += mass;
        return t;
    }

    double tail_ratio() {
        if (terms.empty()) return 0.0;
        std::stable_sort(terms.begin(), terms.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        const std::size_t dec = std::max<std::size_t>(1, (terms.size() + 9) / 10);
        double tail = 0.0;
        for (std::size_t i = terms.size() - dec; i < terms.size(); ++i) tail += terms[i].second;
        const double t = total();
        return t > 0.0 ? tail / t : 0.0;
    }
};

}  // namespace

ClassReport class_report(const modes::SpectralField& field, const ClassC& c) {
    const ScaleOrder a_scale{Operator::GradDiv, 2 * c.k};
    const ScaleOrder w_scale{Operator::Curl, c.m};
    ClassReport report;
    TailAccumulator a_tail, w_tail;
    for (const auto& [idx, coef] : field.coefficients) {
        const double mag = std::abs(modes::eigenvalue_of(idx, field.radius));
        if (family_matches(idx.family, Operator::GradDiv)) {
            a_tail.add(mag, ipow(mag, a_scale.order) * coef * coef);
            ++report.graddiv_mode_count;
        } else {
            w_tail.add(mag, ipow(mag, 2 * w_scale.order) * coef * coef);
            ++report.curl_mode_count;
        }
    }
    report.graddiv_norm = std::sqrt(a_tail.total());
    report.curl_norm = std::sqrt(w_tail.total());
    report.graddiv_tail_ratio = a_tail.tail_ratio();
    report.curl_tail_ratio = w_tail.tail_ratio();
    return report;
}

modes::SpectralField solve_poly(const modes::SpectralField& rhs, Operator op, int order) {
    if (order < 1) throw std::invalid_argument("solve_poly: order must be >= 1");
    return apply_power(rhs, op, -2 * order);
}

nlohmann::json to_json(const modes::SpectralField& field) {
    nlohmann::json j;
    j["R"] = field.radius;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [idx, c] : field.coefficients) {
        entries.push_back({{"family", modes::family_name(idx.family)},
                           {"n", idx.n},
                           {"m", idx.m},
                           {"k", idx.k},
                           {"c", c}});
    }
    j["modes"] = std::move(entries);
    return j;
}

modes::SpectralField field_from_json(const nlohmann::json& j) {
    modes::SpectralField field;
    field.radius = j.at("R").get<double>();
    if (!(field.radius > 0.0) || !std::isfinite(field.radius))
        throw std::invalid_argument("field JSON: R must be positive");
    for (const auto& e : j.at("modes")) {
        modes::ModeIndex idx;
        idx.family = modes::family_from_name(e.at("family").get<std::string>());
        idx.n = e.at("n").get<int>();
        idx.m = e.at("m").get<int>();
        idx.k = e.at("k").get<int>();
        modes::require_valid(idx);
        const double c = e.at("c").get<double>();
        if (!std::isfinite(c)) throw std::invalid_argument("field JSON: coefficient not finite");
        if (!field.coefficients.emplace(idx, c).second)
            throw std::invalid_argument("field JSON: duplicate mode entry");
    }
    return field;
}

}  // namespace ballmodes::spectral
