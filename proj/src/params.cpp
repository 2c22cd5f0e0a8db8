#include "gps/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gps {

SummabilityParams SummabilityParams::one_variable(std::vector<double> K, double R, double r, double theta,
                                                  SupportDescriptor delta) {
    SummabilityParams t;
    for (double k : K) t.K.push_back({k});
    std::sort(t.K.begin(), t.K.end());
    t.K.erase(std::unique(t.K.begin(), t.K.end()), t.K.end());
    t.R = {R};
    t.r = r;
    t.theta = theta;
    t.delta = {std::move(delta)};
    t.convention = Convention::one_variable;
    return t;
}

SummabilityParams SummabilityParams::several(std::vector<std::vector<double>> K, std::vector<double> R, double r,
                                             double theta, std::vector<SupportDescriptor> delta) {
    SummabilityParams t;
    t.K = std::move(K);
    t.R = std::move(R);
    t.r = r;
    t.theta = theta;
    if (delta.empty()) delta.assign(t.R.size(), SupportDescriptor::arithmetic(1.0));
    t.delta = std::move(delta);
    t.convention = Convention::several_variables;
    return t;
}

double SummabilityParams::M_K() const {
    double best = 0.0;
    for (const auto& k : K) best = std::max(best, k.at(0));
    return best;
}

double SummabilityParams::mu_K() const {
    double best = K.empty() ? 0.0 : K.front().at(0);
    for (const auto& k : K) best = std::min(best, k.at(0));
    return best;
}

std::vector<double> SummabilityParams::mu_vector() const {
    std::vector<double> mu(m(), std::numeric_limits<double>::infinity());
    for (const auto& k : K)
        for (std::size_t i = 0; i < m(); ++i) mu[i] = std::min(mu[i], k[i]);
    return mu;
}

void SummabilityParams::validate() const {
    if (R.empty()) throw std::invalid_argument("tau: R must have at least one component");
    if (K.empty()) throw std::invalid_argument("tau: K must be nonempty");
    for (const auto& k : K) {
        if (k.size() != R.size()) throw std::invalid_argument("tau: K tuple arity differs from R");
        for (double v : k)
            if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("tau: K entries must be finite and >= 0");
    }
    for (double v : R)
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("tau: R must be positive and finite");
    if (!(r > 1.0)) throw std::invalid_argument("tau: r must exceed 1");
    if (!(theta > M_PI / 2)) throw std::invalid_argument("tau: theta must exceed pi/2");
    if (!delta.empty() && delta.size() != R.size()) throw std::invalid_argument("tau: Delta arity differs from R");
}

std::string SummabilityParams::describe() const {
    std::ostringstream os;
    os << "K={";
    for (std::size_t j = 0; j < K.size(); ++j) {
        os << (j ? "," : "");
        if (K[j].size() == 1) os << K[j][0];
        else {
            os << "(";
            for (std::size_t i = 0; i < K[j].size(); ++i) os << (i ? "," : "") << K[j][i];
            os << ")";
        }
    }
    os << "} R=(";
    for (std::size_t i = 0; i < R.size(); ++i) os << (i ? "," : "") << R[i];
    os << ") r=" << r << " theta=" << theta;
    for (std::size_t i = 0; i < delta.size(); ++i) os << " Delta" << i + 1 << "=" << delta[i].describe();
    return os.str();
}

bool params_leq(const SummabilityParams& a, const SummabilityParams& b, double support_window) {
    if (a.m() != b.m()) return false;
    for (const auto& k : b.K) {
        bool found = std::any_of(a.K.begin(), a.K.end(), [&](const std::vector<double>& j) {
            for (std::size_t i = 0; i < j.size(); ++i)
                if (std::abs(j[i] - k[i]) > 1e-12) return false;
            return true;
        });
        if (!found) return false;
    }
    for (std::size_t i = 0; i < a.m(); ++i)
        if (a.R[i] > b.R[i]) return false;
    if (a.r > b.r || a.theta > b.theta) return false;
    for (std::size_t i = 0; i < std::min(a.delta.size(), b.delta.size()); ++i)
        for (double v : b.delta[i].enumerate(support_window))
            if (!a.delta[i].contains(v)) return false;
    return true;
}

}  // namespace gps
