#include "mlf/sampling.hpp"

#include <set>
#include <stdexcept>

namespace mlf
{

std::size_t pick( Rng& rng, std::size_t n )
{
    if ( n == 0 )
        throw std::invalid_argument( "pick from an empty range" );
    return static_cast< std::size_t >( rng() % n );
}

Formula random_formula( Rng& rng, std::uint32_t vars, std::size_t max_depth )
{
    if ( vars == 0 )
        throw std::invalid_argument( "random formulas need at least one variable" );
    // Leaves one time in three below the cap keep sizes moderate.
    if ( max_depth == 0 || pick( rng, 3 ) == 0 )
        return var( static_cast< VarIndex >( pick( rng, vars ) ) );
    switch ( pick( rng, 6 ) )
    {
    case 0: return neg( random_formula( rng, vars, max_depth - 1 ) );
    case 1: return box( random_formula( rng, vars, max_depth - 1 ) );
    case 2: return diamond( random_formula( rng, vars, max_depth - 1 ) );
    default: break;
    }
    const auto op = pick( rng, 3 );
    auto a = random_formula( rng, vars, max_depth - 1 );
    auto b = random_formula( rng, vars, max_depth - 1 );
    return op == 0 ? conj( a, b ) : op == 1 ? disj( a, b ) : implies( a, b );
}

std::vector< Formula > enumerate_formulas( std::uint32_t vars, std::size_t max_depth, std::size_t limit )
{
    std::vector< Formula > out;
    std::set< Formula > seen;
    auto add = [ & ]( Formula f ) {
        if ( seen.insert( f ).second )
        {
            if ( out.size() == limit )
                throw std::length_error( "more than " + std::to_string( limit ) + " formulas" );
            out.push_back( std::move( f ) );
        }
    };
    for ( VarIndex v = 0; v < vars; ++v )
        add( var( v ) );
    for ( std::size_t d = 1; d <= max_depth; ++d )
    {
        const std::vector< Formula > prev = out;
        for ( const auto& f : prev )
        {
            add( neg( f ) );
            add( box( f ) );
            add( diamond( f ) );
        }
        for ( const auto& a : prev )
            for ( const auto& b : prev )
            {
                add( conj( a, b ) );
                add( disj( a, b ) );
                add( implies( a, b ) );
            }
    }
    return out;
}

KripkeModel random_model( Rng& rng, const Frame& f, std::uint32_t vars )
{
    KripkeModel::Valuation val;
    for ( VarIndex v = 0; v < vars; ++v )
        val[ v ] = static_cast< WorldMask >( rng() ) & f.all();
    return KripkeModel{ f, std::move( val ) };
}

Frame random_transitive_frame( Rng& rng, std::size_t worlds )
{
    if ( worlds == 0 || worlds > 64 )
        throw std::invalid_argument( "frames have between 1 and 64 worlds" );
    std::vector< WorldMask > succ( worlds, 0 );
    for ( auto& s : succ )
        s = static_cast< WorldMask >( rng() ) & all_worlds( worlds );
    for ( std::size_t k = 0; k < worlds; ++k )
        for ( std::size_t i = 0; i < worlds; ++i )
            if ( contains( succ[ i ], k ) )
                succ[ i ] |= succ[ k ];
    return Frame{ std::move( succ ) };
}

RoundtripStats sample_roundtrips( const LabeledMultiverse& lm, Rng& rng, std::size_t samples, std::size_t max_depth,
                                 std::uint32_t vars )
{
    RoundtripStats st;
    for ( std::size_t i = 0; i < samples; ++i )
    {
        const auto m = random_model( rng, lm.labeling.frame, vars );
        const auto f = random_formula( rng, vars, max_depth );
        ++st.samples;
        if ( roundtrip_check( lm, m, lm.labeling.initial, f ) )
            ++st.agreements;
        else if ( !st.first_failure )
        {
            st.first_failure = i;
            st.failing_formula = f;
        }
    }
    return st;
}

} // namespace mlf
