#include "mlf/kripke.hpp"

#include <bit>

namespace mlf
{

namespace
{

void require_same_variables( const KripkeModel& m1, const KripkeModel& m2 )
{
    const auto& a = m1.valuation();
    const auto& b = m2.valuation();
    if ( a.size() != b.size() || !std::equal( a.begin(), a.end(), b.begin(), []( auto& x, auto& y ) { return x.first == y.first; } ) )
        throw std::invalid_argument( "bisimulation needs models over the same variables" );
}

std::vector< WorldMask > propositional_agreement( const KripkeModel& m1, const KripkeModel& m2 )
{
    std::vector< WorldMask > rel( m1.size(), m2.frame().all() );
    for ( const auto& [ v, left ] : m1.valuation() )
    {
        const WorldMask right = m2.truth( v );
        for ( std::size_t x = 0; x < m1.size(); ++x )
            rel[ x ] &= contains( left, x ) ? right : m2.frame().all() & ~right;
    }
    return rel;
}

/// One back-and-forth step: keep (x, y) in `base` when every successor on
/// either side is matched through `rel`.
std::vector< WorldMask > refine( const KripkeModel& m1, const KripkeModel& m2, const std::vector< WorldMask >& base,
                                 const std::vector< WorldMask >& rel )
{
    std::vector< WorldMask > inverse( m2.size(), 0 );
    for ( std::size_t x = 0; x < rel.size(); ++x )
        for ( WorldMask rest = rel[ x ]; rest; rest &= rest - 1 )
            inverse[ static_cast< std::size_t >( std::countr_zero( rest ) ) ] |= world_bit( x );

    std::vector< WorldMask > out( m1.size(), 0 );
    for ( std::size_t x = 0; x < m1.size(); ++x )
    {
        const WorldMask sx = m1.frame().successors( x );
        for ( WorldMask rest = base[ x ]; rest; rest &= rest - 1 )
        {
            const auto y = static_cast< std::size_t >( std::countr_zero( rest ) );
            const WorldMask sy = m2.frame().successors( y );
            bool ok = true;
            for ( WorldMask xs = sx; ok && xs; xs &= xs - 1 )
                ok = ( rel[ static_cast< std::size_t >( std::countr_zero( xs ) ) ] & sy ) != 0;
            for ( WorldMask ys = sy; ok && ys; ys &= ys - 1 )
                ok = ( inverse[ static_cast< std::size_t >( std::countr_zero( ys ) ) ] & sx ) != 0;
            if ( ok )
                out[ x ] |= world_bit( y );
        }
    }
    return out;
}

} // namespace

std::size_t Bisimulation::pair_count() const
{
    std::size_t n = 0;
    for ( auto m : related )
        n += static_cast< std::size_t >( std::popcount( m ) );
    return n;
}

std::vector< std::pair< std::size_t, std::size_t > > Bisimulation::pairs() const
{
    std::vector< std::pair< std::size_t, std::size_t > > out;
    for ( std::size_t x = 0; x < related.size(); ++x )
        for ( WorldMask rest = related[ x ]; rest; rest &= rest - 1 )
            out.emplace_back( x, static_cast< std::size_t >( std::countr_zero( rest ) ) );
    return out;
}

Bisimulation largest_bisimulation( const KripkeModel& m1, const KripkeModel& m2 )
{
    require_same_variables( m1, m2 );
    auto rel = propositional_agreement( m1, m2 );
    for ( ;; )
    {
        auto next = refine( m1, m2, rel, rel );
        if ( next == rel )
            return { std::move( rel ) };
        rel = std::move( next );
    }
}

bool bounded_bisimilar( const KripkeModel& m1, std::size_t w1, const KripkeModel& m2, std::size_t w2, std::size_t depth )
{
    require_same_variables( m1, m2 );
    if ( w1 >= m1.size() || w2 >= m2.size() )
        throw std::out_of_range( "world out of range" );
    const auto base = propositional_agreement( m1, m2 );
    auto rel = base;
    for ( std::size_t i = 0; i < depth; ++i )
    {
        auto next = refine( m1, m2, base, rel );
        if ( next == rel )
            break;
        rel = std::move( next );
    }
    return contains( rel[ w1 ], w2 );
}

} // namespace mlf
