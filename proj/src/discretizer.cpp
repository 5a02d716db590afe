#include "smc/discretizer.hpp"

#include <algorithm>

#include "smc/error.hpp"
#include "smc/simd.hpp"

namespace smc {

AxisScaling AxisScaling::fit(std::span<const Observation> samples) {
    AxisScaling s;
    if (samples.empty()) return s;
    auto [mlo, mhi] = std::minmax_element(samples.begin(), samples.end(),
                                          [](auto& a, auto& b) { return a.motor < b.motor; });
    auto [slo, shi] = std::minmax_element(samples.begin(), samples.end(),
                                          [](auto& a, auto& b) { return a.sensor < b.sensor; });
    const double mspan = mhi->motor - mlo->motor;
    const double sspan = shi->sensor - slo->sensor;
    s.motor_offset = mlo->motor;
    s.motor_scale = mspan > 0.0 ? 1.0 / mspan : 1.0;
    s.sensor_offset = slo->sensor;
    s.sensor_scale = sspan > 0.0 ? 1.0 / sspan : 1.0;
    return s;
}

PrototypeSet::PrototypeSet(std::vector<Observation> centers, AxisScaling scaling)
    : centers_(std::move(centers)), scaling_(scaling) {
    const std::size_t k = centers_.size();
    normalized_soa_.resize(2 * k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto p = scaling_.apply(centers_[j]);
        normalized_soa_[j] = p[0];
        normalized_soa_[k + j] = p[1];
    }
}

std::size_t PrototypeSet::classify(const Observation& o) const {
    const auto p = scaling_.apply(o);
    return simd::active().nearest_center(p.data(), normalized_soa_.data(), centers_.size(), 2).index;
}

std::vector<std::size_t> PrototypeSet::classify(std::span<const Observation> obs) const {
    std::vector<std::size_t> out;
    out.reserve(obs.size());
    for (const auto& o : obs) out.push_back(classify(o));
    return out;
}

PrototypeSet fit_prototypes(std::span<const Observation> samples, std::size_t r, std::uint64_t seed,
                            const KMeansOptions& options) {
    if (samples.empty()) throw Error(ErrorKind::empty_input, "no samples to discretize");
    const AxisScaling scaling = AxisScaling::fit(samples);
    std::vector<double> points;
    points.reserve(2 * samples.size());
    for (const auto& o : samples) {
        const auto p = scaling.apply(o);
        points.insert(points.end(), p.begin(), p.end());
    }
    const KMeansResult km = kmeans(points, 2, r, seed, options);

    std::vector<Observation> centers;
    centers.reserve(r);
    for (std::size_t j = 0; j < r; ++j)
        centers.push_back(scaling.invert({km.centers[2 * j], km.centers[2 * j + 1]}));

    PrototypeSet protos(std::move(centers), scaling);
    protos.inertia = km.inertia;
    protos.restart_inertias = km.restart_inertias;
    return protos;
}

} // namespace smc
