#pragma once

#include <string>
#include <vector>

#include "gps/support.hpp"

namespace gps {

// tau = (K, R, r, theta, Delta).
//
// Two conventions for K exist. In one variable an entry k is the Gevrey
// index itself: radii shrink like R/(1+p)^k and sectors open to theta*k. In
// several variables an entry k is a weight vector: polysectors are
// k.|Im w| < theta and radii shrink like R_i/(1+p)^(1/mu_i). A one-variable
// k corresponds to the several-variable weight 1/k.
struct SummabilityParams {
    enum class Convention { one_variable, several_variables };

    std::vector<std::vector<double>> K;  // each tuple has m entries
    std::vector<double> R;
    double r = 2.0;
    double theta = 2.0;
    std::vector<SupportDescriptor> delta;  // per variable; product support
    Convention convention = Convention::one_variable;

    static SummabilityParams one_variable(std::vector<double> K, double R, double r, double theta,
                                          SupportDescriptor delta = SupportDescriptor::arithmetic(1.0));
    static SummabilityParams several(std::vector<std::vector<double>> K, std::vector<double> R, double r,
                                     double theta, std::vector<SupportDescriptor> delta = {});

    std::size_t m() const { return R.size(); }
    // One-variable max K / min K.
    double M_K() const;
    double mu_K() const;
    // Componentwise minimum over K.
    std::vector<double> mu_vector() const;
    // Throws std::invalid_argument naming the broken invariant.
    void validate() const;
    std::string describe() const;
};

// tau1 <= tau2: K1 contains K2, R1 <= R2, r1 <= r2, theta1 <= theta2 and
// Delta1 contains Delta2 (checked on points up to support_window).
bool params_leq(const SummabilityParams& a, const SummabilityParams& b, double support_window = 10.0);

}  // namespace gps
