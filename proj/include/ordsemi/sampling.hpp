#pragma once

// Deterministic random elements for the exemplar backends. Draws use the
// raw mt19937_64 sequence (fixed by the standard), so a seed produces the
// same elements on every platform.

#include "ordsemi/order_core.hpp"

#include <cstdint>
#include <random>

namespace ordsemi {

/// Uniform integer in [lo, hi].
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

/// Random element of an exemplar backend, or of the dual of one.
/// Throws PreconditionViolation for other backends.
Element random_element(const Backend& b, std::mt19937_64& rng);

} // namespace ordsemi
