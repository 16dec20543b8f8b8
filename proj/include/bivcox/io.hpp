#pragma once

#include <iosfwd>
#include <string>

#include "bivcox/estimation.hpp"
#include "bivcox/sampling.hpp"

namespace bivcox {

// header u,v[,z1..zd] for copula-scale sets, x,y[,z1..zd] for lifetimes
void write_sample_csv(std::ostream& os, const SamplePairSet& pairs);
SamplePairSet read_sample_csv(std::istream& is);

// estimator input; header must start with two value columns
ObservationSet read_observations_csv(std::istream& is);

std::string format_double(double x);

} // namespace bivcox
