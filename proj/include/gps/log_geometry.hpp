#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gps/log_point.hpp"
#include "gps/params.hpp"

namespace gps {

// Region of the logarithmic chart, described rather than materialized.
// Membership is the defining strict inequality, or its non-strict version
// for closed regions.
class LogRegion {
public:
    enum class Kind { disk, sector, line, polysector, polydisk, borel_disk, intersection, union_of };

    // H(r) = {Re w < r}, componentwise for a polyradius.
    static LogRegion disk(std::vector<double> log_radius);
    static LogRegion disk(double log_radius) { return disk(std::vector<double>{log_radius}); }
    // S(d, r, theta) = {Re w < r, |d - Im w| < theta} with -inf; theta = inf
    // gives H(r).
    static LogRegion sector(double d, double log_radius, double theta);
    // T(d) = {Im w = d} with -inf.
    static LogRegion line(double d);
    // S^k(r, theta) = {w in H(r): k.|Im w| < theta}.
    static LogRegion polysector(std::vector<double> k, std::vector<double> log_radius, double theta);
    // H^k_p(r) = {w in H(r): k.Re w < k.r - log(1+p)}.
    static LogRegion polydisk(std::vector<double> k, std::vector<double> log_radius, std::uint64_t p);
    // V(d, D) = {cos(Im w - d) > D e^{Re w}} with -inf.
    static LogRegion borel_disk(double d, double D);
    static LogRegion intersection(std::vector<LogRegion> parts);
    static LogRegion union_of(std::vector<LogRegion> parts);
    // S^K_p(r, theta) = intersection over k of S^k(r, theta) union H^k_p(r).
    static LogRegion polysector_p(const std::vector<std::vector<double>>& K, std::vector<double> log_radius,
                                  double theta, std::uint64_t p);

    // Same region with its boundary included.
    LogRegion closure() const;

    Kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    bool contains(const LogPoint& w) const;
    bool contains(LogCoord w) const { return contains(LogPoint{w}); }
    // sup Re w over the region in coordinate i (+inf if unbounded).
    double log_radius(std::size_t i = 0) const;
    // For one-dimensional sectors: half-opening around the direction.
    double half_angle() const { return theta_; }
    double direction() const { return d_; }
    std::string describe() const;

private:
    Kind kind_ = Kind::disk;
    std::size_t dim_ = 1;
    bool closed_ = false;
    std::vector<double> r_, k_;
    double d_ = 0.0, theta_ = 0.0, D_ = 0.0;
    std::uint64_t p_ = 0;
    std::vector<LogRegion> parts_;
};

inline bool contains(const LogRegion& region, const LogPoint& w) { return region.contains(w); }

// rho^tau_p in the convention of tau.
std::vector<double> rho_p(const SummabilityParams& tau, std::uint64_t p);

// S^tau and S^tau_p in the convention of tau (one-variable S^tau_p is closed).
LogRegion tau_sector(const SummabilityParams& tau);
LogRegion tau_sector_p(const SummabilityParams& tau, std::uint64_t p);

struct ContainmentReport {
    bool ok = true;
    // Which inclusion broke: 0 for H(log rho) in H^mu_p, 1 for H^mu_p in the
    // intersection of the H^k_p, 2 for that intersection in S^tau_p.
    int failed_link = -1;
    std::optional<LogPoint> witness;
    std::size_t tested[3] = {0, 0, 0};
};

// Samples points inside each region of the chain
//   H(log rho_p) in H^mu_p(log R) in (intersection of H^k_p(log R)) in S^tau_p
// and checks membership in the next. The K weights are read in the
// several-variable convention (one-variable entries are inverted first).
// rho_override replaces rho_p, for negative controls.
ContainmentReport containment_check(const SummabilityParams& tau, std::uint64_t p, std::size_t samples,
                                    std::uint64_t seed = 1,
                                    const std::optional<std::vector<double>>& rho_override = std::nullopt);

}  // namespace gps
