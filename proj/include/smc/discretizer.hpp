#pragma once

// Vector quantization of the motor-sensor plane into r prototype states.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "smc/exploration.hpp"
#include "smc/kmeans.hpp"

namespace smc {

// Per-axis min-max normalization fitted on the training data.
struct AxisScaling {
    double motor_offset = 0.0;
    double motor_scale = 1.0;
    double sensor_offset = 0.0;
    double sensor_scale = 1.0;

    std::array<double, 2> apply(const Observation& o) const {
        return {(o.motor - motor_offset) * motor_scale, (o.sensor - sensor_offset) * sensor_scale};
    }
    Observation invert(std::array<double, 2> p) const {
        return {p[0] / motor_scale + motor_offset, p[1] / sensor_scale + sensor_offset};
    }

    static AxisScaling fit(std::span<const Observation> samples);
};

class PrototypeSet {
public:
    PrototypeSet(std::vector<Observation> centers, AxisScaling scaling);

    std::size_t size() const { return centers_.size(); }
    const std::vector<Observation>& centers() const { return centers_; }
    const AxisScaling& scaling() const { return scaling_; }

    // Nearest center in normalized coordinates, ties to the lowest index.
    std::size_t classify(const Observation& o) const;
    std::vector<std::size_t> classify(std::span<const Observation> obs) const;

    // Diagnostics from fit(); zero for sets built directly.
    double inertia = 0.0;
    std::vector<double> restart_inertias;

private:
    std::vector<Observation> centers_;
    AxisScaling scaling_;
    std::vector<double> normalized_soa_;
};

PrototypeSet fit_prototypes(std::span<const Observation> samples, std::size_t r, std::uint64_t seed,
                            const KMeansOptions& options = {});

} // namespace smc
