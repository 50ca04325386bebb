#include "mlf/conversions.hpp"


namespace mlf
{

DerivedControls derive_controls( Multiverse mv, std::vector< ControlSentence > underlying, std::uint32_t block_len,
                                 std::uint32_t m_switches, std::vector< ControlSentence > kept_buttons )
{
    const auto n = static_cast< std::uint32_t >( underlying.size() );
    if ( block_len == 0 )
        throw std::invalid_argument( "block length must be positive" );
    if ( m_switches > 4 || ( 1U << m_switches ) > block_len )
        throw std::invalid_argument( "a block of " + std::to_string( block_len ) + " values cannot carry "
                                     + std::to_string( m_switches ) + " switches" );
    if ( kept_buttons.size() > 12 )
        throw std::invalid_argument( "at most 12 kept buttons" );

    using namespace control;
    // exact[x]: the value is exactly x.
    std::vector< ControlSentence > exact;
    for ( std::uint32_t x = 0; x <= n; ++x )
    {
        if ( x == 0 )
            exact.push_back( n == 0 ? top() : neg( underlying[ 0 ] ) );
        else if ( x == n )
            exact.push_back( underlying[ x - 1 ] );
        else
            exact.push_back( conj( underlying[ x - 1 ], neg( underlying[ x ] ) ) );
    }

    DerivedControls dc{ std::move( mv ), std::move( underlying ), {}, {}, std::move( kept_buttons ), block_len, {}, {} };
    const std::uint32_t n_blocks = n / block_len + 1;
    for ( std::uint32_t a = 1; a < n_blocks; ++a )
        dc.ratchet.push_back( dc.underlying[ a * block_len - 1 ] );
    for ( std::uint32_t i = 0; i < m_switches; ++i )
    {
        std::vector< ControlSentence > parts;
        for ( std::uint32_t x = 0; x <= n; ++x )
            if ( ( ( x % block_len ) >> i ) & 1U )
                parts.push_back( exact[ x ] );
        dc.switches.push_back( disj_all( parts ) );
    }

    SentenceEvaluator ev{ dc.multiverse };
    const std::size_t states = dc.multiverse.state_count();
    dc.value.assign( states, 0 );
    for ( std::uint32_t x = 0; x <= n; ++x )
    {
        const StateSet& at = ev.satisfying( exact[ x ] );
        for ( std::size_t s = at.find_first(); s != StateSet::npos; s = at.find_next( s ) )
            dc.value[ s ] = x;
    }
    dc.region.resize( states );
    for ( std::size_t s = 0; s < states; ++s )
    {
        const std::uint32_t x = dc.value[ s ];
        const std::uint32_t block_end = std::min( ( x / block_len ) * block_len + block_len - 1, n );
        if ( block_end - x + 1 >= ( 1U << m_switches ) )
            dc.region.set( s );
    }
    return dc;
}

DerivedControls long_to_ratchet_switches( std::uint32_t n_blocks, std::uint32_t m_switches, std::uint32_t horizon )
{
    if ( n_blocks == 0 )
        throw SignatureError( "a long ratchet needs at least one block" );
    if ( m_switches > 4 )
        throw SignatureError( "at most 4 derived switches" );
    const std::uint64_t block = ( std::uint64_t{ 1 } << m_switches ) * ( std::uint64_t{ horizon } + 1 );
    if ( block * n_blocks > Multiverse::max_states )
        throw SignatureError( "long ratchet has more than " + std::to_string( Multiverse::max_states ) + " values" );
    const auto block_len = static_cast< std::uint32_t >( block );

    ControlSignature sig;
    sig.long_ratchet = LongRatchet{ n_blocks, block_len };
    std::vector< ControlSentence > u;
    for ( std::uint32_t v = 1; v < n_blocks * block_len; ++v )
        u.push_back( control::long_at_least( v ) );
    return derive_controls( Multiverse{ sig }, std::move( u ), block_len, m_switches );
}

DerivedControls ord_buttons_conversion( std::uint32_t n_keep, std::uint32_t n_total )
{
    if ( n_keep >= n_total )
        throw SignatureError( "at least one button must feed the ratchet" );
    if ( n_total > 12 )
        throw SignatureError( "at most 12 buttons" );

    ControlSignature sig;
    sig.n_buttons = n_total;
    using namespace control;
    std::vector< ControlSentence > u;
    for ( std::uint32_t v = 1; v <= n_total - n_keep; ++v )
    {
        std::vector< ControlSentence > high;
        for ( std::uint32_t i = n_keep + v - 1; i < n_total; ++i )
            high.push_back( button( i ) );
        u.push_back( disj_all( high ) );
    }
    std::vector< ControlSentence > kept;
    for ( std::uint32_t i = 0; i < n_keep; ++i )
        kept.push_back( button( i ) );
    return derive_controls( Multiverse{ sig }, std::move( u ), 2, 1, std::move( kept ) );
}

std::optional< RatchetViolation > check_ratchet( const Multiverse& mv, std::span< const ControlSentence > r )
{
    using namespace control;
    SentenceEvaluator ev{ mv };
    const StateSet& reach = mv.successors( mv.initial() );
    // First reachable state outside `holds`.
    auto first_gap = [ & ]( const StateSet& holds ) -> std::optional< std::size_t > {
        const StateSet gap = reach - holds;
        if ( gap.none() )
            return std::nullopt;
        return gap.find_first();
    };

    for ( std::size_t i = 0; i < r.size(); ++i )
    {
        const std::size_t k = i + 1;
        if ( ev.eval( mv.initial(), r[ i ] ) )
            return RatchetViolation{ k, "unpushed", mv.initial() };
        if ( auto s = first_gap( ev.satisfying( implies( r[ i ], box_g( r[ i ] ) ) ) ) )
            return RatchetViolation{ k, "pure", *s };
        if ( auto s = first_gap( ev.satisfying( dia_g( box_g( r[ i ] ) ) ) ) )
            return RatchetViolation{ k, "button", *s };
        if ( i + 1 < r.size() )
        {
            if ( auto s = first_gap( ev.satisfying( implies( r[ i + 1 ], r[ i ] ) ) ) )
                return RatchetViolation{ k, "monotone", *s };
            const auto below = neg( r[ i + 1 ] );
            if ( auto s = first_gap( ev.satisfying( implies( below, dia_g( conj( r[ i ], below ) ) ) ) ) )
                return RatchetViolation{ k, "pushable", *s };
        }
    }
    return std::nullopt;
}

std::optional< IndependenceViolation > check_switch_independence( const DerivedControls& dc )
{
    const auto& mv = dc.multiverse;
    SentenceEvaluator ev{ mv };
    const auto m = static_cast< std::uint32_t >( dc.switches.size() );
    const auto kb = static_cast< std::uint32_t >( dc.buttons.size() );

    const std::size_t states = mv.state_count();
    std::vector< std::uint32_t > pattern( states, 0 );
    std::vector< std::uint32_t > kept( states, 0 );
    for ( std::uint32_t i = 0; i < m; ++i )
    {
        const StateSet& on = ev.satisfying( dc.switches[ i ] );
        for ( std::size_t s = on.find_first(); s != StateSet::npos; s = on.find_next( s ) )
            pattern[ s ] |= 1U << i;
    }
    for ( std::uint32_t i = 0; i < kb; ++i )
    {
        const StateSet& on = ev.satisfying( dc.buttons[ i ] );
        for ( std::size_t s = on.find_first(); s != StateSet::npos; s = on.find_next( s ) )
            kept[ s ] |= 1U << i;
    }

    const StateSet candidates = dc.region & mv.successors( mv.initial() );
    std::vector< char > seen;
    for ( std::size_t s = candidates.find_first(); s != StateSet::npos; s = candidates.find_next( s ) )
    {
        const std::uint32_t block = dc.value[ s ] / dc.block_len;
        // seen[pattern << kb | kept]
        seen.assign( std::size_t{ 1 } << ( m + kb ), 0 );
        const StateSet& succ = mv.successors( s );
        for ( std::size_t t = succ.find_first(); t != StateSet::npos; t = succ.find_next( t ) )
            if ( dc.value[ t ] / dc.block_len == block )
                seen[ ( std::size_t{ pattern[ t ] } << kb ) | kept[ t ] ] = 1;
        const std::uint32_t all_kept = ( 1U << kb ) - 1;
        for ( std::uint32_t j = 0; j < ( 1U << m ); ++j )
        {
            // Every superset of kept[s].
            const std::uint32_t base = kept[ s ];
            const std::uint32_t free = all_kept & ~base;
            std::uint32_t extra = 0;
            do
            {
                const std::uint32_t want = base | extra;
                if ( !seen[ ( std::size_t{ j } << kb ) | want ] )
                    return IndependenceViolation{ s, j, want };
                extra = ( extra - free ) & free;
            } while ( extra != 0 );
        }
    }
    return std::nullopt;
}

} // namespace mlf
