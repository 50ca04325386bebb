#include "mlf/multiverse.hpp"

#include <functional>

namespace mlf
{

namespace
{

struct Radix
{
    std::size_t buttons, switches, ratchet, weak, values;
};

Radix radix_of( const ControlSignature& sig )
{
    return {
        std::size_t{ 1 } << sig.n_buttons,
        std::size_t{ 1 } << sig.n_switches,
        std::size_t{ sig.ratchet_len } + 1,
        sig.n_weak ? ( std::size_t{ 1 } << sig.n_weak ) - 1 : 1,
        sig.long_ratchet ? std::size_t{ sig.long_ratchet->values() } : 1,
    };
}

bool subset( std::uint32_t a, std::uint32_t b ) { return ( a & ~b ) == 0; }

} // namespace

Multiverse::Multiverse( ControlSignature signature ) : _sig{ std::move( signature ) }
{
    if ( _sig.n_weak == 1 )
        throw SignatureError( "a family of weak buttons needs at least two of them" );
    if ( _sig.n_buttons > 12 || _sig.n_switches > 12 || _sig.n_weak > 12 )
        throw SignatureError( "at most 12 controls of each kind" );
    if ( _sig.long_ratchet && _sig.long_ratchet->values() == 0 )
        throw SignatureError( "long ratchet needs at least one block of positive length" );
    const Radix r = radix_of( _sig );
    const std::size_t total = r.buttons * r.switches * r.ratchet * r.weak * r.values;
    if ( total > max_states )
        throw SignatureError( "signature has " + std::to_string( total ) + " states (limit "
                              + std::to_string( max_states ) + ")" );

    _states.reserve( total );
    for ( std::uint32_t b = 0; b < r.buttons; ++b )
        for ( std::uint32_t s = 0; s < r.switches; ++s )
            for ( std::uint32_t k = 0; k < r.ratchet; ++k )
                for ( std::uint32_t w = 0; w < r.weak; ++w )
                    for ( std::uint32_t v = 0; v < r.values; ++v )
                        _states.push_back( { b, s, k, w, v } );

    _succ.assign( total, StateSet( total ) );
    for ( std::size_t i = 0; i < total; ++i )
    {
        const auto& a = _states[ i ];
        for ( std::size_t j = 0; j < total; ++j )
        {
            const auto& b = _states[ j ];
            if ( subset( a.buttons, b.buttons ) && a.ratchet <= b.ratchet && subset( a.weak, b.weak )
                 && a.long_value <= b.long_value )
                _succ[ i ].set( j );
        }
    }
}

bool Multiverse::valid( const MultiverseState& s ) const noexcept
{
    const Radix r = radix_of( _sig );
    return s.buttons < r.buttons && s.switches < r.switches && s.ratchet < r.ratchet && s.weak < r.weak
           && s.long_value < r.values;
}

std::size_t Multiverse::index_of( const MultiverseState& s ) const
{
    if ( !valid( s ) )
        throw SignatureError( "state outside the signature" );
    const Radix r = radix_of( _sig );
    return ( ( ( s.buttons * r.switches + s.switches ) * r.ratchet + s.ratchet ) * r.weak + s.weak ) * r.values
           + s.long_value;
}

bool Multiverse::accessible( const MultiverseState& s, const MultiverseState& t ) const
{
    if ( _sig.n_weak && t.weak == ( std::uint32_t{ 1 } << _sig.n_weak ) - 1 )
    {
        MultiverseState rest = t;
        rest.weak = 0;
        (void)index_of( s );
        (void)index_of( rest );
        return false;
    }
    return _succ[ index_of( s ) ].test( index_of( t ) );
}

bool Multiverse::atom_holds( const ControlSentence& atom, const MultiverseState& s ) const
{
    const std::uint32_t i = atom.index();
    switch ( atom.op() )
    {
    case CtlOp::Button: return ( s.buttons >> i ) & 1U;
    case CtlOp::Switch: return ( s.switches >> i ) & 1U;
    case CtlOp::Weak: return ( s.weak >> i ) & 1U;
    case CtlOp::RatchetAtLeast: return s.ratchet >= i;
    case CtlOp::LongAtLeast: return s.long_value >= i;
    case CtlOp::Top: return true;
    default: return false;
    }
}

StateSet Multiverse::possibly( const StateSet& target ) const
{
    StateSet out( state_count() );
    for ( std::size_t i = 0; i < state_count(); ++i )
        if ( _succ[ i ].intersects( target ) )
            out.set( i );
    return out;
}

StateSet Multiverse::necessarily( const StateSet& target ) const
{
    StateSet out( state_count() );
    for ( std::size_t i = 0; i < state_count(); ++i )
        if ( _succ[ i ].is_subset_of( target ) )
            out.set( i );
    return out;
}

StateSet Multiverse::satisfying( const ControlSentence& s ) const
{
    SentenceEvaluator ev{ *this };
    return ev.satisfying( s );
}

bool Multiverse::eval( std::size_t state, const ControlSentence& s ) const
{
    if ( state >= state_count() )
        throw SignatureError( "state " + std::to_string( state ) + " out of range" );
    return satisfying( s ).test( state );
}

const StateSet& SentenceEvaluator::satisfying( const ControlSentence& s )
{
    if ( auto it = _cache.find( s.id() ); it != _cache.end() )
        return it->second;

    const auto& sig = _mv.signature();
    const std::size_t n = _mv.state_count();
    StateSet out( n );
    auto bounds = [ & ]( std::uint32_t limit, const char* what ) {
        if ( s.index() >= limit )
            throw SignatureError( std::string( what ) + " " + std::to_string( s.index() ) + " is outside the signature" );
    };
    switch ( s.op() )
    {
    case CtlOp::Button: bounds( sig.n_buttons, "button" ); break;
    case CtlOp::Switch: bounds( sig.n_switches, "switch" ); break;
    case CtlOp::Weak: bounds( sig.n_weak, "weak button" ); break;
    case CtlOp::RatchetAtLeast: bounds( sig.ratchet_len + 1, "ratchet value" ); break;
    case CtlOp::LongAtLeast:
        bounds( sig.long_ratchet ? sig.long_ratchet->values() : 1, "long ratchet value" );
        break;
    default: break;
    }

    if ( s.is_atom() )
    {
        for ( std::size_t i = 0; i < n; ++i )
            if ( _mv.atom_holds( s, _mv.state( i ) ) )
                out.set( i );
    }
    else if ( s.is_unary() )
    {
        const StateSet a = satisfying( s.child() );
        out = s.op() == CtlOp::Not ? ~a : s.op() == CtlOp::BoxG ? _mv.necessarily( a ) : _mv.possibly( a );
    }
    else
    {
        const StateSet a = satisfying( s.lhs() );
        const StateSet b = satisfying( s.rhs() );
        switch ( s.op() )
        {
        case CtlOp::And: out = a & b; break;
        case CtlOp::Or: out = a | b; break;
        case CtlOp::Implies: out = ~a | b; break;
        default: out = ~( a ^ b ); break;
        }
    }
    _keep.push_back( s );
    return _cache.emplace( s.id(), std::move( out ) ).first->second;
}

std::optional< std::pair< std::size_t, std::size_t > > Multiverse::directedness_failure() const
{
    for ( std::size_t i = 0; i < state_count(); ++i )
        for ( std::size_t j = i + 1; j < state_count(); ++j )
            if ( !_succ[ i ].intersects( _succ[ j ] ) )
                return std::pair{ i, j };
    return std::nullopt;
}

std::vector< ControlSentence > atom_sentences( const ControlSignature& sig )
{
    std::vector< ControlSentence > out;
    for ( std::uint32_t i = 0; i < sig.n_buttons; ++i )
        out.push_back( control::button( i ) );
    for ( std::uint32_t i = 0; i < sig.n_switches; ++i )
        out.push_back( control::switch_on( i ) );
    for ( std::uint32_t k = 1; k <= sig.ratchet_len; ++k )
        out.push_back( control::ratchet_at_least( k ) );
    for ( std::uint32_t i = 0; i < sig.n_weak; ++i )
        out.push_back( control::weak( i ) );
    if ( sig.long_ratchet )
        for ( std::uint32_t v = 1; v < sig.long_ratchet->values(); ++v )
            out.push_back( control::long_at_least( v ) );
    return out;
}

std::optional< std::pair< std::size_t, std::size_t > > dot2_failure( const Multiverse& mv,
                                                                     std::span< const ControlSentence > sentences )
{
    using namespace control;
    std::optional< std::pair< std::size_t, std::size_t > > first;
    for ( std::size_t k = 0; k < sentences.size(); ++k )
    {
        const auto& f = sentences[ k ];
        const StateSet holds = mv.satisfying( implies( dia_g( box_g( f ) ), box_g( dia_g( f ) ) ) );
        const std::size_t bad = ( ~holds ).find_first();
        if ( bad != StateSet::npos && ( !first || bad < first->first ) )
            first = std::pair{ bad, k };
    }
    return first;
}

} // namespace mlf
