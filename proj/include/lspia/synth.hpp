#pragma once

#include <array>
#include <cstdint>

#include "lspia/dataset.hpp"

namespace lspia::synth {

enum class Kind { curve_samples, grid_samples, solid_samples, hole_punched, clustered_params };

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Deterministic synthetic data sets on the parameter box [0,1]^dim.
///
///   curve_samples     samples[0] points of a smooth curve, uniform params
///   grid_samples      samples[0] x samples[1] surface grid
///   solid_samples     samples[0..2] volume grid of a smooth vector field
///   hole_punched      grid/curve/solid per dim, minus samples whose
///                     parameters fall strictly inside the hole box
///   clustered_params  distinct^dim distinct parameters, each repeated
///                     `multiplicity` times (forces a rank-deficient system
///                     while every index group stays populated)
///
/// `noise` adds uniform [-noise, noise] offsets to point coordinates, driven
/// by `seed`; parameters are never perturbed. Identical specs produce
/// identical data sets.
struct SyntheticSpec {
    Kind kind = Kind::curve_samples;
    int dim = 1;       // parameter dimensionality
    int data_dim = 3;  // point dimensionality
    std::array<int, 3> samples = {40, 0, 0};
    std::array<Interval, 3> hole{};
    int distinct = 8;
    int multiplicity = 5;
    double noise = 0.0;
    std::uint64_t seed = 1;
};

DataSet synthesize(const SyntheticSpec& spec);

/// The smooth reference fields the generators sample, exposed so tests can
/// compare a fit against the noiseless field. dim selects curve/surface/
/// volume; the result holds data_dim coordinates.
std::array<double, 3> field_value(int dim, int data_dim, const ParamPoint& t);

}  // namespace lspia::synth
