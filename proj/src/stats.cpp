#include "latlab/stats.hpp"

namespace latlab {

double ks_distance_normal(const std::vector<double>& sample) {
    return ks_distance(sample, [](double x) { return normal_cdf(x); });
}

MeanStd mean_std(const std::vector<double>& values) {
    MeanStd r;
    const std::size_t n = values.size();
    if (n == 0) return r;
    NeumaierSum s;
    for (double v : values) s.add(v);
    r.mean = s.value() / static_cast<double>(n);
    if (n >= 2) {
        NeumaierSum q;
        for (double v : values) q.add((v - r.mean) * (v - r.mean));
        r.std_dev = std::sqrt(q.value() / static_cast<double>(n - 1));
        r.std_err = r.std_dev / std::sqrt(static_cast<double>(n));
    }
    return r;
}

}  // namespace latlab
