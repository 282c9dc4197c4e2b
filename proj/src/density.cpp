#include "latlab/density.hpp"

#include "latlab/lattice.hpp"
#include "latlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace latlab {

DensitySpec DensitySpec::uniform() { return DensitySpec{}; }

DensitySpec DensitySpec::window(double alpha) {
    DensitySpec d;
    d.kind = Kind::Window;
    d.alpha = alpha;
    d.validate();
    return d;
}

DensitySpec DensitySpec::make_steps(std::vector<Step> steps) {
    DensitySpec d;
    d.kind = Kind::Steps;
    d.steps = std::move(steps);
    d.validate();
    return d;
}

void DensitySpec::validate() const {
    switch (kind) {
        case Kind::Uniform: return;
        case Kind::Window:
            if (!(alpha > 0.0) || !(alpha < 1.0)) {
                throw BadDensity("window density needs 0 < alpha < 1");
            }
            return;
        case Kind::Steps: {
            if (steps.empty()) throw BadDensity("steps density needs at least one step");
            double mass = 0.0;
            std::vector<Step> sorted = steps;
            std::sort(sorted.begin(), sorted.end(),
                      [](const Step& a, const Step& b) { return a.lo < b.lo; });
            double prev_hi = 0.0;
            bool first = true;
            for (const Step& s : sorted) {
                if (!(s.weight > 0.0)) throw BadDensity("step weights must be positive");
                if (!(s.lo >= 0.0) || !(s.hi <= 1.0) || !(s.lo < s.hi)) {
                    throw BadDensity("steps must be subintervals of [0,1]");
                }
                if (!first && s.lo < prev_hi - 1e-15) throw BadDensity("steps must be disjoint");
                prev_hi = s.hi;
                first = false;
                mass += s.weight;
            }
            if (std::abs(mass - 1.0) > 1e-12) throw BadDensity("step weights must sum to 1");
            return;
        }
    }
}

std::vector<double> sample_t(const DensitySpec& rho, double bigT, int n, std::uint64_t seed) {
    if (n < 1) throw DomainError("sample_t needs n >= 1");
    if (!(bigT > 0.0)) throw DomainError("sample_t needs bigT > 0");
    rho.validate();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Rng rng = substream(seed, static_cast<std::uint64_t>(i));
        double u = rng.next_double();
        double x = 0.0;
        switch (rho.kind) {
            case DensitySpec::Kind::Uniform: x = u; break;
            case DensitySpec::Kind::Window: x = rho.alpha + (1.0 - rho.alpha) * u; break;
            case DensitySpec::Kind::Steps: {
                double pick = u;
                const DensitySpec::Step* chosen = &rho.steps.back();
                for (const auto& s : rho.steps) {
                    if (pick < s.weight) {
                        chosen = &s;
                        break;
                    }
                    pick -= s.weight;
                }
                x = chosen->lo + (chosen->hi - chosen->lo) * rng.next_double();
                break;
            }
        }
        out.push_back(bigT * x);
    }
    return out;
}

DensitySpec parse_density_spec(const std::string& text) {
    if (text == "uniform") return DensitySpec::uniform();
    if (text.rfind("window:", 0) == 0) return DensitySpec::window(parse_real(text.substr(7)));
    if (text.rfind("steps:", 0) == 0) {
        std::vector<DensitySpec::Step> steps;
        std::stringstream ss(text.substr(6));
        std::string part;
        while (std::getline(ss, part, ';')) {
            std::stringstream ps(part);
            std::string item;
            std::vector<double> vals;
            while (std::getline(ps, item, ',')) vals.push_back(parse_real(item));
            if (vals.size() != 3) throw ParseError("each step needs weight,lo,hi");
            steps.push_back({vals[0], vals[1], vals[2]});
        }
        return DensitySpec::make_steps(std::move(steps));
    }
    throw ParseError("unknown density '" + text + "'");
}

}  // namespace latlab
