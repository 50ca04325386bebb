#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mlf
{

/// World sets are bitmasks; frames are capped at 64 worlds.
using WorldMask = std::uint64_t;
inline constexpr std::size_t max_worlds = 64;

[[nodiscard]] constexpr WorldMask world_bit( std::size_t w ) noexcept { return WorldMask{ 1 } << w; }
[[nodiscard]] constexpr WorldMask all_worlds( std::size_t n ) noexcept
{
    return n >= 64 ? ~WorldMask{ 0 } : ( WorldMask{ 1 } << n ) - 1;
}
[[nodiscard]] constexpr bool contains( WorldMask m, std::size_t w ) noexcept { return ( m >> w ) & 1U; }

/// Structural annotation of a world: the algebra element or cluster rank it
/// sits on (`node`) and its index inside that cluster (`copy`).
struct WorldLabel
{
    std::uint32_t node = 0;
    std::uint32_t copy = 0;

    friend bool operator==( const WorldLabel&, const WorldLabel& ) = default;
};

class Frame
{
public:
    Frame() = default;

    /// `successors[i]` is the set of worlds accessible from i.
    explicit Frame( std::vector< WorldMask > successors, std::vector< WorldLabel > labels = {} );

    static Frame from_pairs( std::size_t worlds, std::span< const std::pair< std::size_t, std::size_t > > pairs );

    [[nodiscard]] std::size_t size() const noexcept { return _succ.size(); }
    [[nodiscard]] WorldMask successors( std::size_t w ) const { return _succ.at( w ); }
    [[nodiscard]] const std::vector< WorldMask >& successor_masks() const noexcept { return _succ; }
    [[nodiscard]] WorldMask predecessors( std::size_t w ) const;
    [[nodiscard]] bool related( std::size_t from, std::size_t to ) const { return contains( _succ.at( from ), to ); }
    [[nodiscard]] WorldMask all() const noexcept { return all_worlds( size() ); }

    /// Pairs in lexicographic order.
    [[nodiscard]] std::vector< std::pair< std::size_t, std::size_t > > pairs() const;

    [[nodiscard]] const std::vector< WorldLabel >& labels() const noexcept { return _labels; }
    [[nodiscard]] bool has_labels() const noexcept { return !_labels.empty(); }

    /// Relation equality; labels are annotations and do not take part.
    friend bool operator==( const Frame& a, const Frame& b ) noexcept { return a._succ == b._succ; }

private:
    std::vector< WorldMask > _succ;
    std::vector< WorldLabel > _labels;
};

[[nodiscard]] bool is_reflexive( const Frame& f );
[[nodiscard]] bool is_transitive( const Frame& f );
[[nodiscard]] bool is_preorder( const Frame& f );

/// The least world index that reaches every world, if any.
[[nodiscard]] std::optional< std::size_t > initial_world( const Frame& f );

/// Quotient of a preorder by mutual accessibility. Cluster ids follow the
/// order of each cluster's first world.
struct ClusterQuotient
{
    std::vector< std::size_t > cluster_of;     // world -> cluster id
    std::vector< WorldMask > members;          // cluster id -> worlds
    std::vector< WorldMask > strictly_above;   // cluster id -> cluster ids strictly above

    [[nodiscard]] std::size_t cluster_count() const noexcept { return members.size(); }
    [[nodiscard]] bool less( std::size_t a, std::size_t b ) const { return contains( strictly_above.at( a ), b ); }
    [[nodiscard]] bool leq( std::size_t a, std::size_t b ) const { return a == b || less( a, b ); }
    [[nodiscard]] std::size_t max_cluster_size() const;
};

class FrameError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Throws FrameError unless `f` is a preorder.
[[nodiscard]] ClusterQuotient quotient( const Frame& f );

enum class FrameClass
{
    SingleCluster,
    LinearPreorder,
    PreBooleanAlgebra,
    ToplessPreBooleanAlgebra,
    ReflexiveTransitive,
};

[[nodiscard]] std::string_view to_string( FrameClass c );
/// Accepts the canonical names plus short aliases (single, linear, preba, topless, preorder).
[[nodiscard]] std::optional< FrameClass > parse_frame_class( std::string_view name );

[[nodiscard]] bool classify( const Frame& f, FrameClass c );

/// How a preorder's quotient sits on a (topless) Boolean algebra of subsets.
struct BooleanStructure
{
    std::size_t atoms = 0;
    bool topless = false;
    ClusterQuotient quotient;
    std::vector< std::uint32_t > subset_of_cluster; // cluster id -> subset bitmask
    std::vector< std::size_t > cluster_of_subset;   // subset bitmask -> cluster id (size 2^atoms; top unused when topless)
};

/// Recognizes pre-Boolean algebras (`topless == false`) or their topless
/// variant. The single-cluster frame is the trivial algebra on no atoms and
/// the topless algebra on one atom.
[[nodiscard]] std::optional< BooleanStructure > boolean_structure( const Frame& f, bool topless );

/// Every frame of class `c` on `worlds` worlds, one per isomorphism class.
/// Throws FrameError on `worlds == 0` or beyond the class's size guard.
[[nodiscard]] std::vector< Frame > enumerate( FrameClass c, std::size_t worlds );

/// Largest world count `enumerate` accepts for the class.
[[nodiscard]] std::size_t enumeration_limit( FrameClass c ) noexcept;

/// Linear preorder with clusters of the given sizes, bottom first.
/// World labels are (cluster rank, copy).
[[nodiscard]] Frame linear_frame( std::span< const std::size_t > cluster_sizes );
[[nodiscard]] Frame single_cluster( std::size_t worlds );

/// Frame over the subsets of `atoms` atoms (proper subsets when topless)
/// ordered by inclusion, each subset replaced by a cluster of the given size.
/// Worlds are grouped by subset bitmask, copies consecutive; labels are
/// (subset bitmask, copy).
[[nodiscard]] Frame powerset_frame( std::size_t atoms, const std::map< std::uint32_t, std::size_t >& cluster_sizes, bool topless );
[[nodiscard]] Frame powerset_frame( std::size_t atoms, std::size_t cluster_size, bool topless );

/// Root plus `leaves` maximal worlds, reflexive and transitive.
[[nodiscard]] Frame tree_with_leaves( std::size_t leaves );

struct PaddedFrame
{
    Frame frame;
    std::vector< std::size_t > source; // new world -> original world it copies
};

/// Enlarges every cluster to exactly `target` worlds by appending copies of
/// the cluster's first world. Original worlds keep their indices.
[[nodiscard]] PaddedFrame pad_clusters( const Frame& f, std::size_t target );

} // namespace mlf
