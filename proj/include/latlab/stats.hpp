#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace latlab {

// Neumaier compensated sum; accumulation order is fixed by the caller, so
// results are bit-reproducible run to run.
class NeumaierSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

// One-sample Kolmogorov-Smirnov distance against the standard normal CDF.
// Sorts a copy of the sample.
double ks_distance_normal(const std::vector<double>& sample);

// One-sample KS distance against an arbitrary CDF.
template <class Cdf>
double ks_distance(std::vector<double> sample, Cdf&& cdf) {
    std::sort(sample.begin(), sample.end());
    const std::size_t n = sample.size();
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = cdf(sample[i]);
        double lo = f - static_cast<double>(i) / static_cast<double>(n);
        double hi = static_cast<double>(i + 1) / static_cast<double>(n) - f;
        if (lo > d) d = lo;
        if (hi > d) d = hi;
    }
    return d;
}

struct MeanStd {
    double mean = 0.0;
    double std_dev = 0.0;   // sample standard deviation (n-1)
    double std_err = 0.0;   // std_dev / sqrt(n)
};

MeanStd mean_std(const std::vector<double>& values);

}  // namespace latlab
