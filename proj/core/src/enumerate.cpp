#include "mlf/frames.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>

namespace mlf
{

namespace
{

using Sizes = std::vector< std::size_t >;

void compositions_rec( std::size_t remaining, std::size_t parts, Sizes& prefix, std::vector< Sizes >& out )
{
    if ( parts == 0 )
    {
        if ( remaining == 0 )
            out.push_back( prefix );
        return;
    }
    if ( remaining < parts )
        return;
    for ( std::size_t first = 1; first + ( parts - 1 ) <= remaining; ++first )
    {
        prefix.push_back( first );
        compositions_rec( remaining - first, parts - 1, prefix, out );
        prefix.pop_back();
    }
}

/// Ordered sequences of `parts` positive sizes summing to `total`, lexicographic.
std::vector< Sizes > compositions( std::size_t total, std::size_t parts )
{
    std::vector< Sizes > out;
    Sizes prefix;
    compositions_rec( total, parts, prefix, out );
    return out;
}

void all_compositions_rec( std::size_t remaining, Sizes& prefix, std::vector< Sizes >& out )
{
    if ( remaining == 0 )
    {
        out.push_back( prefix );
        return;
    }
    for ( std::size_t first = 1; first <= remaining; ++first )
    {
        prefix.push_back( first );
        all_compositions_rec( remaining - first, prefix, out );
        prefix.pop_back();
    }
}

/// A permutation of element ids, applied as `permuted[perm[i]] = original[i]`.
using Perm = std::vector< std::size_t >;

bool canonical_under( const Sizes& s, const std::vector< Perm >& group )
{
    Sizes image( s.size() );
    for ( const auto& perm : group )
    {
        for ( std::size_t i = 0; i < s.size(); ++i )
            image[ perm[ i ] ] = s[ i ];
        if ( image < s )
            return false;
    }
    return true;
}

/// Subset permutations induced by permuting `atoms` atoms.
std::vector< Perm > atom_permutations( std::size_t atoms, std::size_t elements )
{
    std::vector< std::size_t > sigma( atoms );
    std::iota( sigma.begin(), sigma.end(), 0 );
    std::vector< Perm > out;
    do
    {
        Perm p( elements );
        for ( std::size_t s = 0; s < elements; ++s )
        {
            std::size_t image = 0;
            for ( std::size_t i = 0; i < atoms; ++i )
                if ( ( s >> i ) & 1U )
                    image |= std::size_t{ 1 } << sigma[ i ];
            p[ s ] = image;
        }
        out.push_back( std::move( p ) );
    } while ( std::next_permutation( sigma.begin(), sigma.end() ) );
    return out;
}

/// Frame on clusters `0..c-1` where `above[a]` holds the clusters strictly above a.
Frame clustered_frame( const std::vector< WorldMask >& above, const Sizes& sizes )
{
    std::vector< std::size_t > start( sizes.size() + 1, 0 );
    for ( std::size_t i = 0; i < sizes.size(); ++i )
        start[ i + 1 ] = start[ i ] + sizes[ i ];
    const std::size_t n = start.back();
    std::vector< WorldMask > cluster_worlds( sizes.size() );
    for ( std::size_t i = 0; i < sizes.size(); ++i )
        cluster_worlds[ i ] = all_worlds( start[ i + 1 ] ) & ~all_worlds( start[ i ] );
    std::vector< WorldMask > succ( n );
    std::vector< WorldLabel > labels( n );
    for ( std::size_t a = 0; a < sizes.size(); ++a )
    {
        WorldMask up = cluster_worlds[ a ];
        for ( std::size_t b = 0; b < sizes.size(); ++b )
            if ( contains( above[ a ], b ) )
                up |= cluster_worlds[ b ];
        for ( std::size_t j = 0; j < sizes[ a ]; ++j )
        {
            succ[ start[ a ] + j ] = up;
            labels[ start[ a ] + j ] = { static_cast< std::uint32_t >( a ), static_cast< std::uint32_t >( j ) };
        }
    }
    return Frame{ std::move( succ ), std::move( labels ) };
}

std::vector< Frame > enumerate_boolean( std::size_t n, bool topless )
{
    std::vector< Frame > out;
    for ( std::size_t k = topless ? 1 : 0;; ++k )
    {
        const std::size_t elements = ( std::size_t{ 1 } << k ) - ( topless ? 1 : 0 );
        if ( elements > n )
            break;
        const auto group = topless && k == 1 ? std::vector< Perm >{} : atom_permutations( k, elements );
        for ( const auto& sizes : compositions( n, elements ) )
        {
            if ( !canonical_under( sizes, group ) )
                continue;
            std::map< std::uint32_t, std::size_t > by_subset;
            for ( std::size_t s = 0; s < elements; ++s )
                by_subset[ static_cast< std::uint32_t >( s ) ] = sizes[ s ];
            out.push_back( powerset_frame( k, by_subset, topless ) );
        }
    }
    return out;
}

struct Poset
{
    std::size_t points;
    std::uint64_t key;
    std::vector< WorldMask > above;
    std::vector< Perm > automorphisms;
};

std::uint64_t encode( const std::vector< WorldMask >& above, const Perm& perm )
{
    const std::size_t c = above.size();
    std::uint64_t key = 0;
    for ( std::size_t a = 0; a < c; ++a )
        for ( WorldMask rest = above[ a ]; rest; rest &= rest - 1 )
        {
            auto b = static_cast< std::size_t >( std::countr_zero( rest ) );
            key |= std::uint64_t{ 1 } << ( perm[ a ] * c + perm[ b ] );
        }
    return key;
}

std::vector< WorldMask > decode( std::uint64_t key, std::size_t c )
{
    std::vector< WorldMask > above( c, 0 );
    for ( std::size_t a = 0; a < c; ++a )
        for ( std::size_t b = 0; b < c; ++b )
            if ( ( key >> ( a * c + b ) ) & 1U )
                above[ a ] |= world_bit( b );
    return above;
}

/// Partial orders on `c` points, one per isomorphism class, ordered by canonical key.
std::vector< Poset > posets_up_to_iso( std::size_t c )
{
    std::vector< std::pair< std::size_t, std::size_t > > slots;
    for ( std::size_t i = 0; i < c; ++i )
        for ( std::size_t j = i + 1; j < c; ++j )
            slots.emplace_back( i, j );

    std::vector< Perm > perms;
    Perm p( c );
    std::iota( p.begin(), p.end(), 0 );
    do
        perms.push_back( p );
    while ( std::next_permutation( p.begin(), p.end() ) );

    std::set< std::uint64_t > keys;
    std::vector< WorldMask > above( c );
    for ( std::uint64_t bits = 0; bits < ( std::uint64_t{ 1 } << slots.size() ); ++bits )
    {
        std::fill( above.begin(), above.end(), 0 );
        for ( std::size_t s = 0; s < slots.size(); ++s )
            if ( ( bits >> s ) & 1U )
                above[ slots[ s ].first ] |= world_bit( slots[ s ].second );
        bool transitive = true;
        for ( std::size_t a = 0; a < c && transitive; ++a )
            for ( WorldMask rest = above[ a ]; rest; rest &= rest - 1 )
                if ( above[ static_cast< std::size_t >( std::countr_zero( rest ) ) ] & ~above[ a ] )
                {
                    transitive = false;
                    break;
                }
        if ( !transitive )
            continue;
        std::uint64_t best = ~std::uint64_t{ 0 };
        for ( const auto& perm : perms )
            best = std::min( best, encode( above, perm ) );
        keys.insert( best );
    }

    Perm identity( c );
    std::iota( identity.begin(), identity.end(), 0 );
    std::vector< Poset > out;
    for ( auto key : keys )
    {
        Poset poset{ c, key, decode( key, c ), {} };
        for ( const auto& perm : perms )
            if ( perm != identity && encode( poset.above, perm ) == key )
                poset.automorphisms.push_back( perm );
        out.push_back( std::move( poset ) );
    }
    return out;
}

const std::vector< Poset >& cached_posets( std::size_t c )
{
    static std::mutex lock;
    static std::map< std::size_t, std::vector< Poset > > cache;
    std::lock_guard guard( lock );
    auto it = cache.find( c );
    if ( it == cache.end() )
        it = cache.emplace( c, posets_up_to_iso( c ) ).first;
    return it->second;
}

std::vector< Frame > enumerate_preorders( std::size_t n )
{
    std::vector< Frame > out;
    for ( std::size_t c = 1; c <= n; ++c )
        for ( const auto& poset : cached_posets( c ) )
            for ( const auto& sizes : compositions( n, c ) )
                if ( canonical_under( sizes, poset.automorphisms ) )
                    out.push_back( clustered_frame( poset.above, sizes ) );
    return out;
}

} // namespace

std::size_t enumeration_limit( FrameClass c ) noexcept
{
    switch ( c )
    {
    case FrameClass::SingleCluster:
        return max_worlds;
    case FrameClass::ReflexiveTransitive:
        return 6;
    default:
        return 16;
    }
}

std::vector< Frame > enumerate( FrameClass c, std::size_t worlds )
{
    if ( worlds == 0 )
        throw FrameError( "enumeration needs at least one world" );
    if ( worlds > enumeration_limit( c ) )
        throw FrameError( "enumeration of " + std::string( to_string( c ) ) + " frames is limited to "
                          + std::to_string( enumeration_limit( c ) ) + " worlds" );
    switch ( c )
    {
    case FrameClass::SingleCluster:
        return { single_cluster( worlds ) };
    case FrameClass::LinearPreorder:
    {
        std::vector< Sizes > all;
        Sizes prefix;
        all_compositions_rec( worlds, prefix, all );
        std::vector< Frame > out;
        out.reserve( all.size() );
        for ( const auto& sizes : all )
            out.push_back( linear_frame( sizes ) );
        return out;
    }
    case FrameClass::PreBooleanAlgebra:
        return enumerate_boolean( worlds, false );
    case FrameClass::ToplessPreBooleanAlgebra:
        return enumerate_boolean( worlds, true );
    case FrameClass::ReflexiveTransitive:
        return enumerate_preorders( worlds );
    }
    return {};
}

} // namespace mlf
