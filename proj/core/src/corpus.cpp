#include "mlf/corpus.hpp"
#include "mlf/theories.hpp"

#include <sstream>

namespace mlf
{

Formula k_alternative( std::size_t k )
{
    if ( k < 2 )
        throw std::invalid_argument( "the alternative principle needs at least two alternatives" );
    auto p = []( std::size_t i ) { return var( static_cast< VarIndex >( i ) ); };
    auto poss_nec = [ & ]( std::size_t i ) { return diamond( box( p( i ) ) ); };

    std::vector< Formula > open;
    for ( std::size_t i = 0; i < k; ++i )
        open.push_back( poss_nec( i ) );
    std::vector< Formula > clashes;
    for ( std::size_t i = 0; i < k; ++i )
        for ( std::size_t j = i + 1; j < k; ++j )
            clashes.push_back( conj( p( i ), p( j ) ) );
    const Formula antecedent = conj( conj_all( open ), neg( diamond( disj_all( clashes ) ) ) );

    std::vector< Formula > kept( open.begin(), open.end() - 1 );
    kept.push_back( neg( poss_nec( k - 1 ) ) );
    return implies( antecedent, diamond( conj_all( kept ) ) );
}

std::vector< Formula > nec2_stages( const Formula& phi )
{
    const Formula dot2 = instantiate( AxiomScheme::Dot2, std::span( &phi, 1 ) );
    const Formula pn = diamond( box( phi ) );
    const Formula not_np = neg( box( diamond( phi ) ) );
    const Formula pn_neg = diamond( box( neg( phi ) ) );
    return {
        neg( box( dot2 ) ),
        diamond( conj( pn, not_np ) ),
        conj( diamond( pn ), diamond( not_np ) ),
        conj( diamond( pn ), diamond( pn_neg ) ),
        conj( pn, pn_neg ),
        conj( pn, not_np ),
        neg( dot2 ),
    };
}

std::vector< Formula > nec2_links( const Formula& phi )
{
    const auto stages = nec2_stages( phi );
    std::vector< Formula > out;
    for ( std::size_t i = 0; i + 1 < stages.size(); ++i )
        out.push_back( implies( stages[ i ], stages[ i + 1 ] ) );
    return out;
}

Formula nec2_auxiliary( const Formula& phi ) { return implies( diamond( diamond( phi ) ), diamond( phi ) ); }

Formula nec2_goal()
{
    const Formula dot2 = scheme_template( AxiomScheme::Dot2 );
    return implies( dot2, box( dot2 ) );
}

const std::vector< NamedFormula >& builtin_corpus()
{
    static const std::vector< NamedFormula > corpus = [] {
        std::vector< NamedFormula > out;
        for ( auto s : { AxiomScheme::K, AxiomScheme::T, AxiomScheme::Four, AxiomScheme::Dot2, AxiomScheme::Dot3,
                         AxiomScheme::Five } )
        {
            std::string name{ to_string( s ) };
            if ( name.front() == '.' )
                name.erase( 0, 1 );
            out.push_back( { "axiom." + name, scheme_template( s ) } );
        }
        out.push_back( { "three-alternative", k_alternative( 3 ) } );
        out.push_back( { "four-alternative", k_alternative( 4 ) } );
        out.push_back( { "five-alternative", k_alternative( 5 ) } );
        const auto links = nec2_links( var( 0 ) );
        for ( std::size_t i = 0; i < links.size(); ++i )
            out.push_back( { "nec2.link" + std::to_string( i + 1 ), links[ i ] } );
        out.push_back( { "nec2.aux", nec2_auxiliary( var( 0 ) ) } );
        out.push_back( { "nec2.goal", nec2_goal() } );
        return out;
    }();
    return corpus;
}

std::optional< Formula > corpus_lookup( std::string_view name )
{
    if ( !name.empty() && name.front() == '@' )
        name.remove_prefix( 1 );
    for ( const auto& e : builtin_corpus() )
        if ( e.name == name )
            return e.formula;
    return std::nullopt;
}

std::vector< NamedFormula > parse_corpus( std::string_view text )
{
    std::vector< NamedFormula > out;
    std::istringstream in{ std::string( text ) };
    std::string line;
    for ( std::size_t number = 1; std::getline( in, line ); ++number )
    {
        const auto first = line.find_first_not_of( " \t\r" );
        if ( first == std::string::npos || line[ first ] == '#' )
            continue;
        const auto colon = line.find( ':' );
        if ( colon == std::string::npos )
            throw ParseError( "line " + std::to_string( number ) + ": expected `name: formula`", first );
        std::string name = line.substr( first, colon - first );
        while ( !name.empty() && ( name.back() == ' ' || name.back() == '\t' ) )
            name.pop_back();
        if ( name.empty() )
            throw ParseError( "line " + std::to_string( number ) + ": empty name", first );
        try
        {
            out.push_back( { std::move( name ), parse_formula( std::string_view( line ).substr( colon + 1 ) ) } );
        }
        catch ( const ParseError& e )
        {
            throw ParseError( "line " + std::to_string( number ) + ": " + e.message(), colon + 1 + e.position() );
        }
    }
    return out;
}

std::string format_corpus( const std::vector< NamedFormula >& entries )
{
    std::string out;
    for ( const auto& e : entries )
        out += e.name + ": " + to_string( e.formula ) + "\n";
    return out;
}

} // namespace mlf
