#include "mlf/theories.hpp"
#include "mlf/corpus.hpp"
#include "mlf/parallel.hpp"

#include <algorithm>
#include <cctype>

namespace mlf
{

namespace
{

std::string lowercase( std::string_view s )
{
    std::string out;
    for ( char c : s )
        out += static_cast< char >( std::tolower( static_cast< unsigned char >( c ) ) );
    return out;
}

bool match( const Formula& pattern, const Formula& f, std::vector< std::optional< Formula > >& binding )
{
    if ( pattern.op() == Op::Var )
    {
        auto& slot = binding.at( pattern.var() );
        if ( slot )
            return *slot == f;
        slot = f;
        return true;
    }
    if ( pattern.op() != f.op() )
        return false;
    if ( pattern.is_unary() )
        return match( pattern.child(), f.child(), binding );
    if ( pattern.is_binary() )
        return match( pattern.lhs(), f.lhs(), binding ) && match( pattern.rhs(), f.rhs(), binding );
    return true;
}

} // namespace

std::string_view to_string( AxiomScheme s )
{
    switch ( s )
    {
    case AxiomScheme::K: return "K";
    case AxiomScheme::T: return "T";
    case AxiomScheme::Four: return "4";
    case AxiomScheme::Dot2: return ".2";
    case AxiomScheme::Dot3: return ".3";
    case AxiomScheme::Five: return "5";
    }
    return "?";
}

std::optional< AxiomScheme > parse_axiom_scheme( std::string_view name )
{
    static const std::pair< std::string_view, AxiomScheme > names[] = {
        { "k", AxiomScheme::K },       { "t", AxiomScheme::T },       { "4", AxiomScheme::Four },
        { "four", AxiomScheme::Four }, { ".2", AxiomScheme::Dot2 },   { "2", AxiomScheme::Dot2 },
        { "dot2", AxiomScheme::Dot2 }, { ".3", AxiomScheme::Dot3 },   { "3", AxiomScheme::Dot3 },
        { "dot3", AxiomScheme::Dot3 }, { "5", AxiomScheme::Five },    { "five", AxiomScheme::Five },
    };
    const auto lower = lowercase( name );
    for ( const auto& [ key, value ] : names )
        if ( key == lower )
            return value;
    return std::nullopt;
}

std::size_t arity( AxiomScheme s ) noexcept { return s == AxiomScheme::K || s == AxiomScheme::Dot3 ? 2 : 1; }

Formula scheme_template( AxiomScheme s )
{
    const Formula p = var( 0 );
    const Formula q = var( 1 );
    switch ( s )
    {
    case AxiomScheme::K:
        return implies( box( implies( p, q ) ), implies( box( p ), box( q ) ) );
    case AxiomScheme::T:
        return implies( box( p ), p );
    case AxiomScheme::Four:
        return implies( box( p ), box( box( p ) ) );
    case AxiomScheme::Dot2:
        return implies( diamond( box( p ) ), box( diamond( p ) ) );
    case AxiomScheme::Dot3:
        return implies( conj( diamond( p ), diamond( q ) ),
                        diamond( disj( conj( p, diamond( q ) ), conj( q, diamond( p ) ) ) ) );
    case AxiomScheme::Five:
        return implies( diamond( box( p ) ), p );
    }
    return top();
}

Formula instantiate( AxiomScheme s, std::span< const Formula > args )
{
    if ( args.size() != arity( s ) )
        throw std::invalid_argument( "axiom " + std::string( to_string( s ) ) + " takes " + std::to_string( arity( s ) )
                                     + " argument(s), got " + std::to_string( args.size() ) );
    Substitution sub;
    for ( std::size_t i = 0; i < args.size(); ++i )
        sub.emplace( static_cast< VarIndex >( i ), args[ i ] );
    return substitute( scheme_template( s ), sub );
}

std::optional< std::vector< Formula > > match_instance( AxiomScheme s, const Formula& f )
{
    std::vector< std::optional< Formula > > binding( arity( s ) );
    if ( !match( scheme_template( s ), f, binding ) )
        return std::nullopt;
    std::vector< Formula > out;
    for ( auto& b : binding )
        out.push_back( b ? *b : var( 0 ) );
    return out;
}

std::string_view to_string( Theory t )
{
    switch ( t )
    {
    case Theory::S4: return "S4";
    case Theory::S4_2: return "S4.2";
    case Theory::S4_3: return "S4.3";
    case Theory::S5: return "S5";
    case Theory::S4_tBA: return "S4.tBA";
    }
    return "?";
}

std::optional< Theory > parse_theory( std::string_view name )
{
    const auto lower = lowercase( name );
    for ( auto t : { Theory::S4, Theory::S4_2, Theory::S4_3, Theory::S5, Theory::S4_tBA } )
        if ( lowercase( to_string( t ) ) == lower )
            return t;
    return std::nullopt;
}

std::vector< AxiomScheme > axioms( Theory t )
{
    std::vector< AxiomScheme > out{ AxiomScheme::K, AxiomScheme::T, AxiomScheme::Four };
    switch ( t )
    {
    case Theory::S4: break;
    case Theory::S4_2: out.push_back( AxiomScheme::Dot2 ); break;
    case Theory::S4_3: out.push_back( AxiomScheme::Dot3 ); break;
    case Theory::S5: out.push_back( AxiomScheme::Five ); break;
    case Theory::S4_tBA: return {};
    }
    return out;
}

bool has_axioms( Theory t ) noexcept { return t != Theory::S4_tBA; }

FrameClass characteristic_class( Theory t ) noexcept
{
    switch ( t )
    {
    case Theory::S4: return FrameClass::ReflexiveTransitive;
    case Theory::S4_2: return FrameClass::PreBooleanAlgebra;
    case Theory::S4_3: return FrameClass::LinearPreorder;
    case Theory::S5: return FrameClass::SingleCluster;
    case Theory::S4_tBA: return FrameClass::ToplessPreBooleanAlgebra;
    }
    return FrameClass::ReflexiveTransitive;
}

Verdict decide_upto( Theory t, const Formula& phi, std::size_t max_worlds, const ValidityOptions& options )
{
    return decide_upto( characteristic_class( t ), phi, max_worlds, options );
}

Verdict decide_upto( FrameClass c, const Formula& phi, std::size_t max_worlds, const ValidityOptions& options )
{
    if ( max_worlds == 0 )
        throw std::invalid_argument( "bound must be at least 1" );
    const std::size_t k = variables( phi ).size();
    const unsigned threads = options.threads ? options.threads : default_threads();
    for ( std::size_t n = 1; n <= max_worlds; ++n )
    {
        if ( k * n > options.max_bits )
            throw ExplosionError( "validity sweep over " + std::to_string( k ) + " variables and " + std::to_string( n )
                                  + " worlds exceeds the 2^" + std::to_string( options.max_bits ) + " valuation limit" );
        const auto frames = enumerate( c, n );
        // Small sweeps run one frame per worker; large ones share a frame.
        const bool per_frame = k * n < 16;
        if ( per_frame && frames.size() > 1 && threads > 1 )
        {
            ValidityOptions inner = options;
            inner.threads = 1;
            std::vector< std::optional< Countermodel > > found( frames.size() );
            std::vector< std::jthread > pool;
            std::atomic< std::size_t > next{ 0 };
            for ( unsigned w = 0; w < std::min< std::size_t >( threads, frames.size() ); ++w )
                pool.emplace_back( [ & ] {
                    for ( std::size_t i; ( i = next.fetch_add( 1 ) ) < frames.size(); )
                        found[ i ] = find_countermodel( frames[ i ], phi, inner );
                } );
            pool.clear();
            for ( auto& cm : found )
                if ( cm )
                    return std::move( *cm );
            continue;
        }
        for ( const auto& f : frames )
            if ( auto cm = find_countermodel( f, phi, options ) )
                return std::move( *cm );
    }
    return ValidUpTo{ max_worlds };
}

bool verify_obs_nec2( std::size_t max_worlds, std::size_t depth )
{
    std::vector< Formula > phis{ var( 0 ) };
    for ( std::size_t start = 0, d = 0; d < depth; ++d )
    {
        const std::size_t stop = phis.size();
        for ( std::size_t i = start; i < stop; ++i )
        {
            phis.push_back( neg( phis[ i ] ) );
            phis.push_back( box( phis[ i ] ) );
            phis.push_back( diamond( phis[ i ] ) );
        }
        start = stop;
    }
    std::vector< Formula > checks;
    for ( const auto& phi : phis )
    {
        for ( auto& link : nec2_links( phi ) )
            checks.push_back( std::move( link ) );
        checks.push_back( nec2_auxiliary( phi ) );
    }
    for ( std::size_t n = 1; n <= max_worlds; ++n )
        for ( const auto& f : enumerate( FrameClass::ReflexiveTransitive, n ) )
            for ( const auto& c : checks )
                if ( !frame_validates( f, c ) )
                    return false;
    return true;
}

FormulaSet closure_stages( const FormulaSet& lambda, const FormulaSet& assumptions, std::span< const Formula > universe,
                           std::size_t stages )
{
    const FormulaSet inside( universe.begin(), universe.end() );
    FormulaSet current = lambda;
    current.insert( assumptions.begin(), assumptions.end() );
    for ( std::size_t stage = 1; stage <= stages; ++stage )
    {
        if ( stage % 2 == 1 )
        {
            for ( bool grew = true; grew; )
            {
                grew = false;
                std::vector< Formula > add;
                for ( const auto& f : current )
                    if ( f.op() == Op::Implies && current.contains( f.lhs() ) && inside.contains( f.rhs() )
                         && !current.contains( f.rhs() ) )
                        add.push_back( f.rhs() );
                for ( auto& f : add )
                    grew |= current.insert( std::move( f ) ).second;
            }
        }
        else
        {
            std::vector< Formula > add;
            for ( const auto& f : current )
                if ( auto b = box( f ); inside.contains( b ) )
                    add.push_back( std::move( b ) );
            current.insert( add.begin(), add.end() );
        }
    }
    return current;
}

} // namespace mlf
