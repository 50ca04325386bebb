#include "mlf/labeling.hpp"

#include <functional>
#include <unordered_map>

namespace mlf
{

namespace
{

void require_switches( std::uint32_t m )
{
    if ( m > max_label_switches )
        throw SignatureError( "labelings take at most " + std::to_string( max_label_switches ) + " switches" );
}

ControlSentence exact_pattern( std::uint32_t n, std::uint32_t mask, ControlSentence ( *atom )( std::uint32_t ) )
{
    std::vector< ControlSentence > parts;
    for ( std::uint32_t i = 0; i < n; ++i )
        parts.push_back( ( mask >> i ) & 1U ? atom( i ) : control::neg( atom( i ) ) );
    return control::conj_all( parts );
}

ControlSentence both( const ControlSentence& a, const ControlSentence& b )
{
    if ( a.op() == CtlOp::Top )
        return b;
    if ( b.op() == CtlOp::Top )
        return a;
    return control::conj( a, b );
}

} // namespace

ControlSentence switch_pattern( std::uint32_t m, std::uint32_t pattern ) { return exact_pattern( m, pattern, control::switch_on ); }

LabeledMultiverse labeling_single_cluster( std::uint32_t m )
{
    if ( m == 0 )
        throw SignatureError( "the single-cluster labeling needs at least one switch" );
    require_switches( m );
    ControlSignature sig;
    sig.n_switches = m;
    Labeling lab{ single_cluster( std::size_t{ 1 } << m ), {}, 0 };
    for ( std::uint32_t j = 0; j < ( 1U << m ); ++j )
        lab.phi.push_back( switch_pattern( m, j ) );
    return { Multiverse{ sig }, std::move( lab ) };
}

LabeledMultiverse labeling_linear( std::uint32_t n, std::uint32_t m )
{
    require_switches( m );
    if ( n > 8 )
        throw SignatureError( "the linear labeling takes a ratchet of length at most 8" );
    ControlSignature sig;
    sig.n_switches = m;
    sig.ratchet_len = n;
    std::vector< std::size_t > sizes( n + 1, std::size_t{ 1 } << m );
    Labeling lab{ linear_frame( sizes ), {}, 0 };
    using namespace control;
    for ( std::uint32_t k = 0; k <= n; ++k )
    {
        ControlSentence exactly = k == n ? ( n == 0 ? control::top() : ratchet_at_least( n ) )
                                : k == 0 ? neg( ratchet_at_least( 1 ) )
                                         : conj( ratchet_at_least( k ), neg( ratchet_at_least( k + 1 ) ) );
        for ( std::uint32_t j = 0; j < ( 1U << m ); ++j )
            lab.phi.push_back( both( exactly, switch_pattern( m, j ) ) );
    }
    return { Multiverse{ sig }, std::move( lab ) };
}

LabeledMultiverse labeling_preba( std::uint32_t n, std::uint32_t m )
{
    require_switches( m );
    if ( n + m > 6 )
        throw SignatureError( "the pre-Boolean labeling is limited to buttons + switches <= 6" );
    ControlSignature sig;
    sig.n_buttons = n;
    sig.n_switches = m;
    Labeling lab{ powerset_frame( n, std::size_t{ 1 } << m, false ), {}, 0 };
    for ( std::uint32_t a = 0; a < ( 1U << n ); ++a )
        for ( std::uint32_t j = 0; j < ( 1U << m ); ++j )
            lab.phi.push_back( both( exact_pattern( n, a, control::button ), switch_pattern( m, j ) ) );
    return { Multiverse{ sig }, std::move( lab ) };
}

LabeledMultiverse labeling_topless( std::uint32_t n, std::uint32_t m )
{
    require_switches( m );
    if ( n < 2 )
        throw SignatureError( "the topless labeling needs at least two weak buttons" );
    if ( n + m > 6 )
        throw SignatureError( "the topless labeling is limited to weak buttons + switches <= 6" );
    ControlSignature sig;
    sig.n_weak = n;
    sig.n_switches = m;
    Labeling lab{ powerset_frame( n, std::size_t{ 1 } << m, true ), {}, 0 };
    for ( std::uint32_t a = 0; a + 1 < ( 1U << n ); ++a )
        for ( std::uint32_t j = 0; j < ( 1U << m ); ++j )
            lab.phi.push_back( both( exact_pattern( n, a, control::weak ), switch_pattern( m, j ) ) );
    return { Multiverse{ sig }, std::move( lab ) };
}

LabelingReport verify_labeling( const Multiverse& mv, const Labeling& lab )
{
    const std::size_t worlds = lab.frame.size();
    if ( lab.phi.size() != worlds )
        throw std::invalid_argument( "labeling has " + std::to_string( lab.phi.size() ) + " sentences for "
                                     + std::to_string( worlds ) + " worlds" );
    if ( lab.initial >= worlds )
        throw std::invalid_argument( "initial world out of range" );

    SentenceEvaluator ev{ mv };
    std::vector< StateSet > truth;
    std::vector< StateSet > possible;
    for ( const auto& phi : lab.phi )
    {
        truth.push_back( ev.satisfying( phi ) );
        possible.push_back( mv.possibly( truth.back() ) );
    }

    LabelingReport r;
    const StateSet& reach = mv.successors( mv.initial() );
    for ( std::size_t s = reach.find_first(); s != StateSet::npos; s = reach.find_next( s ) )
    {
        ++r.states_checked;
        std::optional< std::size_t > label;
        for ( std::size_t w = 0; w < worlds; ++w )
        {
            if ( !truth[ w ].test( s ) )
                continue;
            if ( label )
            {
                r.ok = false;
                r.clause = 1;
                r.state = s;
                r.world = label;
                r.other = w;
                r.detail = "two labels hold";
                return r;
            }
            label = w;
        }
        if ( !label )
        {
            r.ok = false;
            r.clause = 1;
            r.state = s;
            r.detail = "no label holds";
            return r;
        }
        for ( std::size_t u = 0; u < worlds; ++u )
        {
            const bool expected = lab.frame.related( *label, u );
            if ( possible[ u ].test( s ) != expected )
            {
                r.ok = false;
                r.clause = 2;
                r.state = s;
                r.world = label;
                r.other = u;
                r.detail = expected ? "label of a reachable world is not possible" : "label of an unreachable world is possible";
                return r;
            }
        }
    }
    if ( !truth[ lab.initial ].test( mv.initial() ) )
    {
        r.ok = false;
        r.clause = 3;
        r.state = mv.initial();
        r.world = lab.initial;
        r.detail = "initial label fails at the initial state";
    }
    return r;
}

ControlSentence Translation::apply( const Formula& f ) const
{
    std::unordered_map< const void*, ControlSentence > memo;
    std::function< ControlSentence( const Formula& ) > go = [ & ]( const Formula& g ) -> ControlSentence {
        if ( auto it = memo.find( g.id() ); it != memo.end() )
            return it->second;
        using namespace control;
        ControlSentence out;
        switch ( g.op() )
        {
        case Op::Var:
        {
            auto it = _psi.find( g.var() );
            if ( it == _psi.end() )
                throw UnknownVariable( g.var() );
            out = it->second;
            break;
        }
        case Op::Top: out = control::top(); break;
        case Op::Bottom: out = control::bottom(); break;
        case Op::Not: out = neg( go( g.child() ) ); break;
        case Op::Box: out = box_g( go( g.child() ) ); break;
        case Op::And: out = conj( go( g.lhs() ), go( g.rhs() ) ); break;
        case Op::Or: out = disj( go( g.lhs() ), go( g.rhs() ) ); break;
        case Op::Implies: out = implies( go( g.lhs() ), go( g.rhs() ) ); break;
        case Op::Iff: out = iff( go( g.lhs() ), go( g.rhs() ) ); break;
        }
        memo.emplace( g.id(), out );
        return out;
    };
    return go( f );
}

Translation translate( const KripkeModel& m, const Labeling& lab )
{
    if ( !( m.frame() == lab.frame ) )
        throw std::invalid_argument( "model frame differs from the labeled frame" );
    std::map< VarIndex, ControlSentence > psi;
    for ( const auto& [ v, mask ] : m.valuation() )
    {
        std::vector< ControlSentence > parts;
        for ( std::size_t w = 0; w < m.size(); ++w )
            if ( contains( mask, w ) )
                parts.push_back( lab.phi[ w ] );
        psi.emplace( v, control::disj_all( parts ) );
    }
    return Translation{ std::move( psi ) };
}

bool roundtrip_check( const LabeledMultiverse& lm, const KripkeModel& m, std::size_t w0, const Formula& f )
{
    const auto h = translate( m, lm.labeling ).apply( f );
    return eval( m, w0, f ) == lm.multiverse.eval( lm.multiverse.initial(), h );
}

std::optional< UniformFailure > uniform_check( const LabeledMultiverse& lm, const KripkeModel& m, const Formula& f )
{
    const auto& mv = lm.multiverse;
    const auto& lab = lm.labeling;
    SentenceEvaluator ev{ mv };
    const StateSet translated = ev.satisfying( translate( m, lab ).apply( f ) );
    const WorldMask model = m.satisfying( f );

    std::vector< StateSet > truth;
    for ( const auto& phi : lab.phi )
        truth.push_back( ev.satisfying( phi ) );
    const StateSet& reach = mv.successors( mv.initial() );
    for ( std::size_t s = reach.find_first(); s != StateSet::npos; s = reach.find_next( s ) )
        for ( std::size_t w = 0; w < lab.frame.size(); ++w )
            if ( truth[ w ].test( s ) && contains( model, w ) != translated.test( s ) )
                return UniformFailure{ s, w, contains( model, w ) };
    return std::nullopt;
}

} // namespace mlf
