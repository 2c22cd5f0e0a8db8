#include "gps/log_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gps {

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();

bool less(double a, double b, bool closed) { return closed ? a <= b : a < b; }

void require_dim(const LogPoint& w, std::size_t dim) {
    if (w.size() != dim)
        throw std::invalid_argument("point has " + std::to_string(w.size()) + " coordinates, region has " +
                                    std::to_string(dim));
}

// k . Re w, treating 0 * (-inf) as 0.
double weighted_re(const std::vector<double>& k, const LogPoint& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] == 0.0) continue;
        if (w[i].is_minus_infinity()) return -kInfD;
        s += k[i] * w[i].re();
    }
    return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0.0) s += a[i] * b[i];
    return s;
}

}  // namespace

LogRegion LogRegion::disk(std::vector<double> log_radius) {
    LogRegion g;
    g.kind_ = Kind::disk;
    g.dim_ = log_radius.size();
    g.r_ = std::move(log_radius);
    return g;
}

LogRegion LogRegion::sector(double d, double log_radius, double theta) {
    if (!(theta >= 0.0)) throw std::invalid_argument("sector opening must be >= 0");
    LogRegion g;
    g.kind_ = Kind::sector;
    g.r_ = {log_radius};
    g.d_ = d;
    g.theta_ = theta;
    return g;
}

LogRegion LogRegion::line(double d) {
    LogRegion g;
    g.kind_ = Kind::line;
    g.d_ = d;
    g.r_ = {kInfD};
    return g;
}

LogRegion LogRegion::polysector(std::vector<double> k, std::vector<double> log_radius, double theta) {
    if (k.size() != log_radius.size()) throw std::invalid_argument("polysector weight/radius arity mismatch");
    LogRegion g;
    g.kind_ = Kind::polysector;
    g.dim_ = k.size();
    g.k_ = std::move(k);
    g.r_ = std::move(log_radius);
    g.theta_ = theta;
    return g;
}

LogRegion LogRegion::polydisk(std::vector<double> k, std::vector<double> log_radius, std::uint64_t p) {
    if (k.size() != log_radius.size()) throw std::invalid_argument("polydisk weight/radius arity mismatch");
    LogRegion g;
    g.kind_ = Kind::polydisk;
    g.dim_ = k.size();
    g.k_ = std::move(k);
    g.r_ = std::move(log_radius);
    g.p_ = p;
    return g;
}

LogRegion LogRegion::borel_disk(double d, double D) {
    if (!(D >= 0.0)) throw std::invalid_argument("Borel disk needs D >= 0");
    LogRegion g;
    g.kind_ = Kind::borel_disk;
    g.d_ = d;
    g.D_ = D;
    g.r_ = {D > 0.0 ? -std::log(D) : kInfD};
    return g;
}

LogRegion LogRegion::intersection(std::vector<LogRegion> parts) {
    if (parts.empty()) throw std::invalid_argument("empty intersection");
    LogRegion g;
    g.kind_ = Kind::intersection;
    g.dim_ = parts.front().dim();
    for (const auto& p : parts)
        if (p.dim() != g.dim_) throw std::invalid_argument("intersection of regions of different dimension");
    g.parts_ = std::move(parts);
    return g;
}

LogRegion LogRegion::union_of(std::vector<LogRegion> parts) {
    if (parts.empty()) throw std::invalid_argument("empty union");
    LogRegion g = intersection(std::move(parts));
    g.kind_ = Kind::union_of;
    return g;
}

LogRegion LogRegion::polysector_p(const std::vector<std::vector<double>>& K, std::vector<double> log_radius,
                                  double theta, std::uint64_t p) {
    std::vector<LogRegion> parts;
    for (const auto& k : K) parts.push_back(union_of({polysector(k, log_radius, theta), polydisk(k, log_radius, p)}));
    return intersection(std::move(parts));
}

LogRegion LogRegion::closure() const {
    LogRegion g = *this;
    g.closed_ = true;
    for (auto& p : g.parts_) p = p.closure();
    return g;
}

bool LogRegion::contains(const LogPoint& w) const {
    require_dim(w, dim_);
    switch (kind_) {
        case Kind::disk:
            for (std::size_t i = 0; i < dim_; ++i)
                if (!w[i].is_minus_infinity() && !less(w[i].re(), r_[i], closed_)) return false;
            return true;
        case Kind::sector: {
            if (w[0].is_minus_infinity()) return true;
            if (!less(w[0].re(), r_[0], closed_)) return false;
            if (std::isinf(theta_)) return true;
            return less(std::abs(d_ - w[0].im()), theta_, closed_);
        }
        case Kind::line:
            return w[0].is_minus_infinity() || w[0].im() == d_;
        case Kind::polysector: {
            for (std::size_t i = 0; i < dim_; ++i)
                if (!w[i].is_minus_infinity() && !less(w[i].re(), r_[i], closed_)) return false;
            double s = 0.0;
            for (std::size_t i = 0; i < dim_; ++i)
                if (k_[i] != 0.0) s += k_[i] * std::abs(w[i].im());
            return less(s, theta_, closed_);
        }
        case Kind::polydisk: {
            for (std::size_t i = 0; i < dim_; ++i)
                if (!w[i].is_minus_infinity() && !less(w[i].re(), r_[i], closed_)) return false;
            double lhs = weighted_re(k_, w);
            double rhs = dot(k_, r_) - std::log1p(static_cast<double>(p_));
            if (lhs == -kInfD) return true;
            return less(lhs, rhs, closed_);
        }
        case Kind::borel_disk: {
            if (w[0].is_minus_infinity()) return true;
            return less(D_ * std::exp(w[0].re()), std::cos(w[0].im() - d_), closed_);
        }
        case Kind::intersection:
            return std::all_of(parts_.begin(), parts_.end(), [&](const LogRegion& p) { return p.contains(w); });
        case Kind::union_of:
            return std::any_of(parts_.begin(), parts_.end(), [&](const LogRegion& p) { return p.contains(w); });
    }
    return false;
}

double LogRegion::log_radius(std::size_t i) const {
    switch (kind_) {
        case Kind::intersection: {
            double best = kInfD;
            for (const auto& p : parts_) best = std::min(best, p.log_radius(i));
            return best;
        }
        case Kind::union_of: {
            double best = -kInfD;
            for (const auto& p : parts_) best = std::max(best, p.log_radius(i));
            return best;
        }
        case Kind::line:
            return kInfD;
        default:
            return r_.at(kind_ == Kind::sector || kind_ == Kind::borel_disk ? 0 : i);
    }
}

std::string LogRegion::describe() const {
    std::ostringstream os;
    auto vec = [&](const std::vector<double>& v) {
        os << "(";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << ")";
    };
    if (closed_) os << "cl ";
    switch (kind_) {
        case Kind::disk: os << "H"; vec(r_); break;
        case Kind::sector: os << "S(" << d_ << "," << r_[0] << "," << theta_ << ")"; break;
        case Kind::line: os << "T(" << d_ << ")"; break;
        case Kind::polysector: os << "S^"; vec(k_); os << "("; vec(r_); os << "," << theta_ << ")"; break;
        case Kind::polydisk: os << "H^"; vec(k_); os << "_" << p_; vec(r_); break;
        case Kind::borel_disk: os << "V(" << d_ << "," << D_ << ")"; break;
        case Kind::intersection:
        case Kind::union_of:
            os << (kind_ == Kind::intersection ? "meet[" : "join[");
            for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "; " : "") << parts_[i].describe();
            os << "]";
            break;
    }
    return os.str();
}

std::vector<double> rho_p(const SummabilityParams& tau, std::uint64_t p) {
    const double q = 1.0 + static_cast<double>(p);
    std::vector<double> out(tau.m());
    if (tau.convention == SummabilityParams::Convention::one_variable) {
        double MK = tau.M_K();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = tau.R[i] / std::pow(q, MK);
        return out;
    }
    auto mu = tau.mu_vector();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = mu[i] > 0.0 ? tau.R[i] / std::pow(q, 1.0 / mu[i]) : tau.R[i];
    return out;
}

namespace {

std::vector<double> logs(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::log(v[i]);
    return out;
}

// K in the several-variable convention.
std::vector<std::vector<double>> weights(const SummabilityParams& tau) {
    if (tau.convention == SummabilityParams::Convention::several_variables) return tau.K;
    std::vector<std::vector<double>> out;
    for (const auto& k : tau.K) {
        std::vector<double> w;
        for (double x : k) w.push_back(x > 0.0 ? 1.0 / x : 0.0);
        out.push_back(w);
    }
    return out;
}

}  // namespace

LogRegion tau_sector(const SummabilityParams& tau) {
    auto logR = logs(tau.R);
    if (tau.convention == SummabilityParams::Convention::one_variable) {
        std::vector<LogRegion> parts;
        for (const auto& k : tau.K)
            if (k[0] > 0.0) parts.push_back(LogRegion::sector(0.0, logR[0], tau.theta * k[0]));
        if (parts.empty()) return LogRegion::disk(logR);
        return LogRegion::intersection(std::move(parts));
    }
    std::vector<LogRegion> parts;
    for (const auto& k : tau.K) parts.push_back(LogRegion::polysector(k, logR, tau.theta));
    return LogRegion::intersection(std::move(parts));
}

LogRegion tau_sector_p(const SummabilityParams& tau, std::uint64_t p) {
    auto logR = logs(tau.R);
    if (tau.convention == SummabilityParams::Convention::one_variable) {
        std::vector<LogRegion> parts;
        const double q = 1.0 + static_cast<double>(p);
        for (const auto& k : tau.K) {
            double rho = tau.R[0] / std::pow(q, k[0]);
            parts.push_back(LogRegion::union_of({LogRegion::sector(0.0, logR[0], tau.theta * k[0]),
                                                 LogRegion::disk(std::log(rho))})
                                .closure());
        }
        return LogRegion::intersection(std::move(parts));
    }
    return LogRegion::polysector_p(tau.K, logR, tau.theta, p);
}

ContainmentReport containment_check(const SummabilityParams& tau, std::uint64_t p, std::size_t samples,
                                    std::uint64_t seed, const std::optional<std::vector<double>>& rho_override) {
    tau.validate();
    const std::size_t m = tau.m();
    auto K = weights(tau);
    auto logR = logs(tau.R);

    std::vector<double> mu(m, kInfD);
    for (const auto& k : K)
        for (std::size_t i = 0; i < m; ++i) mu[i] = std::min(mu[i], k[i]);
    std::vector<double> rho(m);
    const double q = 1.0 + static_cast<double>(p);
    for (std::size_t i = 0; i < m; ++i) rho[i] = mu[i] > 0.0 ? tau.R[i] / std::pow(q, 1.0 / mu[i]) : tau.R[i];
    if (rho_override) rho = *rho_override;

    std::vector<LogRegion> chain;
    chain.push_back(LogRegion::disk(logs(rho)));
    chain.push_back(LogRegion::polydisk(mu, logR, p));
    std::vector<LogRegion> hk;
    for (const auto& k : K) hk.push_back(LogRegion::polydisk(k, logR, p));
    chain.push_back(LogRegion::intersection(hk));
    chain.push_back(LogRegion::polysector_p(K, logR, tau.theta, p));

    std::mt19937_64 rng(seed);
    ContainmentReport rep;
    for (int link = 0; link < 3; ++link) {
        const LogRegion& inner = chain[static_cast<std::size_t>(link)];
        const LogRegion& outer = chain[static_cast<std::size_t>(link) + 1];
        std::vector<double> top(m);
        for (std::size_t i = 0; i < m; ++i) top[i] = inner.log_radius(i);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::size_t accepted = 0, attempts = 0;
        while (accepted < samples && attempts < 200 * samples) {
            ++attempts;
            LogPoint w(m);
            for (std::size_t i = 0; i < m; ++i) {
                if (unit(rng) < 0.03) {
                    w[i] = LogCoord::minus_infinity();
                    continue;
                }
                // Concentrate near the top of the region, where inclusions break.
                double re = top[i] - 4.0 * std::pow(unit(rng), 2.0) + 0.25 * unit(rng);
                double im = (unit(rng) * 2.0 - 1.0) * 2.0 * tau.theta;
                w[i] = cplx(re, im);
            }
            if (!inner.contains(w)) continue;
            ++accepted;
            if (!outer.contains(w)) {
                rep.ok = false;
                rep.failed_link = link;
                rep.witness = w;
                rep.tested[link] = accepted;
                return rep;
            }
        }
        rep.tested[link] = accepted;
    }
    return rep;
}

}  // namespace gps
