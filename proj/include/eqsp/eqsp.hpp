// Umbrella header for the recursive zonal equal-area sphere partition
// library: EQ(d,N) partitions, EQP(d,N) point codes, region lookup,
// quality metrics, alternative generators and serialization.

#pragma once

#include "eqsp/compare.hpp"
#include "eqsp/eq_partition.hpp"
#include "eqsp/eq_points.hpp"
#include "eqsp/incomplete_beta.hpp"
#include "eqsp/quality_metrics.hpp"
#include "eqsp/region_lookup.hpp"
#include "eqsp/rng.hpp"
#include "eqsp/serialize.hpp"
#include "eqsp/sphere_geometry.hpp"
