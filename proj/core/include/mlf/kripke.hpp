#pragma once

#include "mlf/formula.hpp"
#include "mlf/frames.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mlf
{

class UnknownVariable : public std::out_of_range
{
public:
    explicit UnknownVariable( VarIndex v );
    [[nodiscard]] VarIndex variable() const noexcept { return _var; }

private:
    VarIndex _var;
};

class KripkeModel
{
public:
    using Valuation = std::map< VarIndex, WorldMask >;

    KripkeModel() = default;
    KripkeModel( Frame frame, Valuation valuation );

    [[nodiscard]] const Frame& frame() const noexcept { return _frame; }
    [[nodiscard]] const Valuation& valuation() const noexcept { return _val; }
    [[nodiscard]] std::size_t size() const noexcept { return _frame.size(); }

    /// Worlds where `v` holds; throws UnknownVariable when there is no row for it.
    [[nodiscard]] WorldMask truth( VarIndex v ) const;

    /// Worlds where `f` holds.
    [[nodiscard]] WorldMask satisfying( const Formula& f ) const;

private:
    Frame _frame;
    Valuation _val;
};

[[nodiscard]] bool eval( const KripkeModel& m, std::size_t world, const Formula& f );

/// The members of `universe` true at `world`, in universe order.
[[nodiscard]] std::vector< Formula > truth_set( const KripkeModel& m, std::size_t world, std::span< const Formula > universe );

struct Countermodel
{
    KripkeModel model;
    std::size_t world = 0;
    Formula formula;
};

class ExplosionError : public std::length_error
{
public:
    using std::length_error::length_error;
};

struct ValidityOptions
{
    /// Upper bound on variables × worlds; each valuation sweep costs 2^bits.
    std::size_t max_bits = 24;
    /// 0 picks `default_threads()`.
    unsigned threads = 0;
};

/// Brute force over every valuation of the variables of `f` on `frame`.
///
/// Valuations are numbered so that bit `i * worlds + w` says whether the i-th
/// variable (ascending index) holds at world w; the countermodel returned is
/// the lowest-numbered failing valuation at its lowest failing world.
[[nodiscard]] std::optional< Countermodel > find_countermodel( const Frame& frame, const Formula& f,
                                                               const ValidityOptions& options = {} );

[[nodiscard]] inline bool frame_validates( const Frame& frame, const Formula& f, const ValidityOptions& options = {} )
{
    return !find_countermodel( frame, f, options ).has_value();
}

/// Relation between the worlds of two models; `related[x]` holds the
/// right-hand worlds paired with left world x.
struct Bisimulation
{
    std::vector< WorldMask > related;

    [[nodiscard]] bool contains( std::size_t left, std::size_t right ) const
    {
        return left < related.size() && mlf::contains( related[ left ], right );
    }
    [[nodiscard]] std::size_t pair_count() const;
    [[nodiscard]] std::vector< std::pair< std::size_t, std::size_t > > pairs() const;
};

/// Greatest fixed point of back-and-forth refinement from propositional agreement.
/// Both models must carry valuation rows for the same variables.
[[nodiscard]] Bisimulation largest_bisimulation( const KripkeModel& m1, const KripkeModel& m2 );

/// Whether (m1, w1) and (m2, w2) agree on every formula of modal depth at
/// most `depth` over the models' variables (depth-bounded bisimilarity).
[[nodiscard]] bool bounded_bisimilar( const KripkeModel& m1, std::size_t w1, const KripkeModel& m2, std::size_t w2,
                                      std::size_t depth );

struct ToplessExpansion
{
    KripkeModel model;
    std::vector< std::size_t > source; // world of the expansion -> world of the original
};

/// Adds a fresh atom to the pre-Boolean algebra under `m`, drops the top of
/// the enlarged algebra, and places a copy of the original top cluster on each
/// new node. Original worlds keep their indices. Throws FrameError unless the
/// frame is a pre-Boolean algebra.
[[nodiscard]] ToplessExpansion toplessify( const KripkeModel& m );

/// Conjunction of the three labeling clauses over variables
/// `first_var + w`, one per world w: the variables partition the worlds,
/// from the world marked by each variable exactly the upward worlds are
/// possible, both now and necessarily, and the initial world's variable holds.
/// Throws FrameError on a non-preorder or a frame without an initial world.
[[nodiscard]] Formula jankov_fine( const Frame& f, VarIndex first_var = 0 );

} // namespace mlf
