// Copyright (c) evograph contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "core/store.hpp"

namespace evograph {

// Exactly uniform draw from [0, n) via rejection; avoids the
// implementation-defined std::uniform_int_distribution so identical seeds
// reproduce identical batches everywhere.
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n);

// A set of `count` distinct directed edges (no self loops) with integer
// weights in [1, 100].
EdgeSet random_edge_set(std::uint32_t vertex_count, std::size_t count,
                        std::mt19937_64& rng);

// Appends `count` transitions: per batch, round(add_fraction * batch_size)
// additions sampled uniformly from absent vertex pairs (no self loops) and
// the remainder deletions sampled uniformly without replacement from the
// currently present edges. Raises InsufficientEdges when a sample is
// impossible. Fully reproducible from `seed`.
void generate_batches(EvolvingGraphStore& store, int count, int batch_size,
                      double add_fraction, std::uint64_t seed);

}  // namespace evograph
