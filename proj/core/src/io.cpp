#include "mlf/io.hpp"

#include "mlf/corpus.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace mlf
{

namespace
{

std::vector< std::size_t > worlds_of( WorldMask m )
{
    std::vector< std::size_t > out;
    for ( ; m != 0; m &= m - 1 )
        out.push_back( static_cast< std::size_t >( std::countr_zero( m ) ) );
    return out;
}

std::vector< std::uint32_t > bits_of( std::uint32_t m, std::uint32_t n )
{
    std::vector< std::uint32_t > out;
    for ( std::uint32_t i = 0; i < n; ++i )
        if ( ( m >> i ) & 1U )
            out.push_back( i );
    return out;
}

const Json& field( const Json& j, const char* key )
{
    if ( !j.is_object() || !j.contains( key ) )
        throw IoError( std::string( "missing field \"" ) + key + "\"" );
    return j.at( key );
}

std::size_t index_field( const Json& j, const char* key )
{
    const auto& v = field( j, key );
    if ( !v.is_number_unsigned() && !( v.is_number_integer() && v.get< long long >() >= 0 ) )
        throw IoError( std::string( "field \"" ) + key + "\" must be a non-negative integer" );
    return v.get< std::size_t >();
}

Formula formula_field( const Json& j, const char* key )
{
    const auto& v = field( j, key );
    if ( !v.is_string() )
        throw IoError( std::string( "field \"" ) + key + "\" must be a formula string" );
    return read_formula( v.get< std::string >() );
}

VarIndex variable_name( const std::string& name )
{
    if ( name.size() < 2 || name[ 0 ] != 'p' || !std::all_of( name.begin() + 1, name.end(), []( char c ) { return c >= '0' && c <= '9'; } )
         || name.size() > 10 )
        throw IoError( "valuation keys must be p<i>, got \"" + name + "\"" );
    return static_cast< VarIndex >( std::stoul( name.substr( 1 ) ) );
}

} // namespace

Formula read_formula( std::string_view text )
{
    if ( !text.empty() && text.front() == '@' )
    {
        if ( auto f = corpus_lookup( text ) )
            return *f;
        throw IoError( "unknown corpus formula '" + std::string( text ) + "'" );
    }
    return parse_formula( text );
}

Json to_json( const Frame& f )
{
    Json j;
    j[ "worlds" ] = f.size();
    Json rel = Json::array();
    for ( const auto& [ a, b ] : f.pairs() )
        rel.push_back( { a, b } );
    j[ "rel" ] = std::move( rel );
    if ( f.has_labels() )
    {
        Json node = Json::array();
        Json copy = Json::array();
        for ( const auto& l : f.labels() )
        {
            node.push_back( l.node );
            copy.push_back( l.copy );
        }
        j[ "labels" ] = { { "node", std::move( node ) }, { "copy", std::move( copy ) } };
    }
    return j;
}

Json to_json( const KripkeModel& m )
{
    Json j = to_json( m.frame() );
    Json val = Json::object();
    for ( const auto& [ v, mask ] : m.valuation() )
        val[ "p" + std::to_string( v ) ] = worlds_of( mask );
    j[ "val" ] = std::move( val );
    return j;
}

Json to_json( const Countermodel& c )
{
    Json j = to_json( c.model );
    j[ "world" ] = c.world;
    j[ "formula" ] = to_string( c.formula );
    return j;
}

Json to_json( const Verdict& v )
{
    if ( const auto* ok = std::get_if< ValidUpTo >( &v ) )
        return Json{ { "ok", true }, { "bound", ok->bound } };
    return Json{ { "ok", false }, { "countermodel", to_json( std::get< Countermodel >( v ) ) } };
}

Frame frame_from_json( const Json& j )
{
    const std::size_t n = index_field( j, "worlds" );
    if ( n == 0 || n > 64 )
        throw IoError( "a frame has between 1 and 64 worlds" );
    const auto& rel = field( j, "rel" );
    if ( !rel.is_array() )
        throw IoError( "\"rel\" must be an array of pairs" );
    std::vector< std::pair< std::size_t, std::size_t > > pairs;
    for ( const auto& p : rel )
    {
        if ( !p.is_array() || p.size() != 2 || !p[ 0 ].is_number_integer() || !p[ 1 ].is_number_integer() )
            throw IoError( "\"rel\" entries must be [i, j] pairs of world indices" );
        const auto a = p[ 0 ].get< long long >();
        const auto b = p[ 1 ].get< long long >();
        if ( a < 0 || b < 0 || static_cast< std::size_t >( a ) >= n || static_cast< std::size_t >( b ) >= n )
            throw IoError( "\"rel\" mentions a world outside 0.." + std::to_string( n - 1 ) );
        pairs.emplace_back( static_cast< std::size_t >( a ), static_cast< std::size_t >( b ) );
    }
    Frame f = Frame::from_pairs( n, pairs );
    if ( j.contains( "labels" ) )
    {
        const auto& l = j.at( "labels" );
        const auto& node = field( l, "node" );
        const auto& copy = field( l, "copy" );
        if ( !node.is_array() || !copy.is_array() || node.size() != n || copy.size() != n )
            throw IoError( "\"labels\" needs \"node\" and \"copy\" arrays with one entry per world" );
        std::vector< WorldLabel > labels;
        for ( std::size_t w = 0; w < n; ++w )
            labels.push_back( { node[ w ].get< std::uint32_t >(), copy[ w ].get< std::uint32_t >() } );
        f = Frame{ f.successor_masks(), std::move( labels ) };
    }
    return f;
}

KripkeModel model_from_json( const Json& j )
{
    Frame f = frame_from_json( j );
    KripkeModel::Valuation val;
    if ( j.contains( "val" ) )
    {
        const auto& v = j.at( "val" );
        if ( !v.is_object() )
            throw IoError( "\"val\" must map variables to world lists" );
        for ( const auto& [ name, ws ] : v.items() )
        {
            if ( !ws.is_array() )
                throw IoError( "\"val\" entries must be world lists" );
            WorldMask mask = 0;
            for ( const auto& w : ws )
            {
                if ( !w.is_number_integer() || w.get< long long >() < 0 || w.get< std::size_t >() >= f.size() )
                    throw IoError( "\"val\" of " + name + " mentions a world outside the frame" );
                mask |= world_bit( w.get< std::size_t >() );
            }
            val[ variable_name( name ) ] = mask;
        }
    }
    return KripkeModel{ std::move( f ), std::move( val ) };
}

std::string to_dot( const Frame& f )
{
    std::ostringstream out;
    out << "digraph frame {\n";
    const auto q = quotient( f );
    for ( std::size_t c = 0; c < q.members.size(); ++c )
    {
        out << "  { rank=same;";
        for ( auto w : worlds_of( q.members[ c ] ) )
            out << " w" << w << ";";
        out << " }\n";
    }
    for ( const auto& [ a, b ] : f.pairs() )
        if ( a != b )
            out << "  w" << a << " -> w" << b << ";\n";
    out << "}\n";
    return out.str();
}

Derivation derivation_from_json( const Json& j )
{
    Derivation d{ formula_field( j, "goal" ), {} };
    const auto& steps = field( j, "steps" );
    if ( !steps.is_array() )
        throw IoError( "\"steps\" must be an array" );
    for ( std::size_t i = 0; i < steps.size(); ++i )
    {
        const auto& s = steps[ i ];
        try
        {
            const auto& rule = field( s, "rule" );
            if ( !rule.is_string() )
                throw IoError( "\"rule\" must be a string" );
            const auto name = rule.get< std::string >();
            DerivationStep step;
            if ( name == "axiom" )
            {
                if ( s.contains( "scheme" ) )
                {
                    step.rule = Rule::Axiom;
                    const auto& sch = s.at( "scheme" );
                    if ( !sch.is_string() )
                        throw IoError( "\"scheme\" must be a string" );
                    const auto scheme = parse_axiom_scheme( sch.get< std::string >() );
                    if ( !scheme )
                        throw IoError( "unknown axiom scheme \"" + sch.get< std::string >() + "\"" );
                    step.scheme = *scheme;
                    const auto& args = field( s, "args" );
                    if ( !args.is_array() )
                        throw IoError( "\"args\" must be an array of formulas" );
                    for ( const auto& a : args )
                    {
                        if ( !a.is_string() )
                            throw IoError( "\"args\" must be an array of formulas" );
                        step.args.push_back( read_formula( a.get< std::string >() ) );
                    }
                }
                else
                    step.rule = Rule::TheoryAxiom;
            }
            else if ( name == "taut" )
                step.rule = Rule::Tautology;
            else if ( name == "mp" )
            {
                step.rule = Rule::ModusPonens;
                step.from = index_field( s, "from" );
                step.imp = index_field( s, "imp" );
            }
            else if ( name == "nec" )
            {
                step.rule = Rule::Necessitation;
                step.from = index_field( s, "from" );
            }
            else
                throw IoError( "unknown rule \"" + name + "\"" );
            if ( step.rule == Rule::TheoryAxiom || step.rule == Rule::Tautology )
                step.formula = formula_field( s, "formula" );
            else if ( s.contains( "formula" ) )
                step.formula = formula_field( s, "formula" );
            d.steps.push_back( std::move( step ) );
        }
        catch ( const ParseError& e )
        {
            throw IoError( "step " + std::to_string( i ) + ": " + e.what() );
        }
        catch ( const std::invalid_argument& e )
        {
            throw IoError( "step " + std::to_string( i ) + ": " + e.what() );
        }
        catch ( const IoError& e )
        {
            throw IoError( "step " + std::to_string( i ) + ": " + e.what() );
        }
    }
    return d;
}

Json to_json( const Derivation& d )
{
    Json steps = Json::array();
    for ( const auto& s : d.steps )
    {
        Json j;
        j[ "rule" ] = s.rule == Rule::TheoryAxiom ? "axiom" : to_string( s.rule );
        switch ( s.rule )
        {
        case Rule::Axiom:
        {
            j[ "scheme" ] = to_string( s.scheme );
            Json args = Json::array();
            for ( const auto& a : s.args )
                args.push_back( to_string( a ) );
            j[ "args" ] = std::move( args );
            break;
        }
        case Rule::ModusPonens:
            j[ "from" ] = s.from;
            j[ "imp" ] = s.imp;
            break;
        case Rule::Necessitation: j[ "from" ] = s.from; break;
        default: break;
        }
        if ( s.formula )
            j[ "formula" ] = to_string( *s.formula );
        steps.push_back( std::move( j ) );
    }
    return Json{ { "goal", to_string( d.goal ) }, { "steps", std::move( steps ) } };
}

Json to_json( const DerivationCheck& c )
{
    Json j;
    j[ "ok" ] = c.ok;
    if ( !c.ok )
    {
        j[ "step" ] = c.failed_step ? Json( *c.failed_step ) : Json( nullptr );
        j[ "reason" ] = c.reason;
    }
    j[ "steps_checked" ] = c.conclusions.size();
    return j;
}

Json state_to_json( const Multiverse& mv, std::size_t state )
{
    const auto& sig = mv.signature();
    const auto& s = mv.state( state );
    Json j;
    j[ "index" ] = state;
    if ( sig.n_buttons )
        j[ "buttons" ] = bits_of( s.buttons, sig.n_buttons );
    if ( sig.n_switches )
        j[ "switches" ] = bits_of( s.switches, sig.n_switches );
    if ( sig.ratchet_len )
        j[ "ratchet" ] = s.ratchet;
    if ( sig.n_weak )
        j[ "weak" ] = bits_of( s.weak, sig.n_weak );
    if ( sig.long_ratchet )
        j[ "long" ] = s.long_value;
    return j;
}

Json to_json( const Multiverse& mv, const LabelingReport& r )
{
    if ( r.ok )
        return Json{ { "ok", true }, { "states_checked", r.states_checked } };
    Json j;
    j[ "ok" ] = false;
    j[ "clause" ] = r.clause;
    j[ "state" ] = state_to_json( mv, r.state );
    j[ "world" ] = r.world ? Json( *r.world ) : Json( nullptr );
    if ( r.other )
        j[ "other" ] = *r.other;
    j[ "detail" ] = r.detail;
    return j;
}

} // namespace mlf
