#pragma once

#include "mlf/formula.hpp"
#include "mlf/frames.hpp"
#include "mlf/kripke.hpp"
#include "mlf/labeling.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace mlf
{

/// Draws use `rng() % n` so sequences are the same on every platform.
using Rng = std::mt19937_64;

[[nodiscard]] std::size_t pick( Rng& rng, std::size_t n );

/// Operator height: variables have depth 0, each of ~ [] <> & | -> adds one.
/// Diamonds count once although they are stored as ~[]~.
///
/// A formula over p0..p<vars-1> of depth at most `max_depth`.
[[nodiscard]] Formula random_formula( Rng& rng, std::uint32_t vars, std::size_t max_depth );

/// Every formula over p0..p<vars-1> of depth at most `max_depth`, without
/// duplicates, in construction order. Throws std::length_error past `limit`.
[[nodiscard]] std::vector< Formula > enumerate_formulas( std::uint32_t vars, std::size_t max_depth, std::size_t limit = 100000 );

/// Each of p0..p<vars-1> holds at each world with probability 1/2.
[[nodiscard]] KripkeModel random_model( Rng& rng, const Frame& f, std::uint32_t vars );

/// Transitive closure of a random relation on `worlds` worlds, each pair
/// present with probability 1/2; not necessarily reflexive.
[[nodiscard]] Frame random_transitive_frame( Rng& rng, std::size_t worlds );

struct RoundtripStats
{
    std::size_t samples = 0;
    std::size_t agreements = 0;
    std::optional< std::size_t > first_failure; // sample index
    std::optional< Formula > failing_formula;
};

/// Random valuations on the labeled frame and random formulas, each checked
/// with `roundtrip_check` at the labeling's initial world.
[[nodiscard]] RoundtripStats sample_roundtrips( const LabeledMultiverse& lm, Rng& rng, std::size_t samples,
                                                std::size_t max_depth, std::uint32_t vars );

} // namespace mlf
