#pragma once

#include "latlab/types.hpp"

#include <cstdint>
#include <vector>

namespace latlab {

// Probability density rho on [0,1]; t in [0,T] is then drawn with density
// rho(t/T)/T.
struct DensitySpec {
    enum class Kind { Uniform, Window, Steps };

    struct Step {
        double weight;
        double lo;
        double hi;
    };

    Kind kind = Kind::Uniform;
    double alpha = 0.0;        // Window: support [alpha, 1]
    std::vector<Step> steps;   // Steps: disjoint subintervals of [0,1]

    static DensitySpec uniform();
    static DensitySpec window(double alpha);
    static DensitySpec make_steps(std::vector<Step> steps);

    void validate() const;  // throws BadDensity
};

// iid samples with density rho(t/T)/T, via inverse CDF (uniform, window) or
// component selection (steps). Sample i uses substream(seed, i), so the
// sequence does not depend on evaluation order.
std::vector<double> sample_t(const DensitySpec& rho, double bigT, int n, std::uint64_t seed);

// `uniform | window:<alpha> | steps:<w>,<lo>,<hi>[;<w>,<lo>,<hi>]...`
DensitySpec parse_density_spec(const std::string& text);

}  // namespace latlab
