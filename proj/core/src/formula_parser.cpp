#include "lexer.hpp"
#include "mlf/formula.hpp"

#include <algorithm>

namespace mlf
{

namespace
{

using detail::Tok;

bool p_index( std::string_view name, std::size_t& index )
{
    return name.size() >= 2 && name[ 0 ] == 'p' && detail::parse_index( name.substr( 1 ), index );
}

struct FormulaHooks
{
    Symbols& symbols;
    VarIndex next_free;

    static bool is_prefix( Tok k ) { return k == Tok::Not || k == Tok::Box || k == Tok::Diamond; }

    static Formula prefix( Tok k, Formula f )
    {
        switch ( k )
        {
        case Tok::Not:
            return neg( f );
        case Tok::Box:
            return box( f );
        default:
            return diamond( f );
        }
    }

    static Formula binary( Tok k, Formula a, Formula b )
    {
        switch ( k )
        {
        case Tok::And:
            return conj( a, b );
        case Tok::Or:
            return disj( a, b );
        case Tok::Implies:
            return implies( a, b );
        default:
            return iff( a, b );
        }
    }

    Formula atom( detail::TokenStream& ts )
    {
        const auto& tok = ts.peek();
        if ( tok.kind != Tok::Ident )
            throw ParseError( "expected a formula, found '" + tok.text + "'", tok.pos );
        ts.next();
        if ( tok.text == "true" )
            return top();
        if ( tok.text == "false" )
            return bottom();
        std::size_t index = 0;
        if ( p_index( tok.text, index ) )
            return var( static_cast< VarIndex >( index ) );
        if ( auto known = symbols.lookup( tok.text ) )
            return var( *known );
        VarIndex fresh = std::max( next_free, symbols.max_index_plus_one() );
        symbols.bind( tok.text, fresh );
        next_free = fresh + 1;
        return var( fresh );
    }
};

std::string render( const Formula& f, const Symbols* symbols );

int precedence( const Formula& f )
{
    if ( f.is_diamond() )
        return detail::PrecUnary;
    switch ( f.op() )
    {
    case Op::Var:
    case Op::Top:
    case Op::Bottom:
        return detail::PrecAtom;
    case Op::Not:
    case Op::Box:
        return detail::PrecUnary;
    case Op::And:
        return detail::PrecAnd;
    case Op::Or:
        return detail::PrecOr;
    case Op::Implies:
        return detail::PrecImplies;
    case Op::Iff:
        return detail::PrecIff;
    }
    return detail::PrecAtom;
}

std::string wrapped( const Formula& f, bool parens, const Symbols* symbols )
{
    std::string s = render( f, symbols );
    return parens ? "(" + s + ")" : s;
}

std::string render( const Formula& f, const Symbols* symbols )
{
    const Formula* inner = nullptr;
    if ( f.is_diamond( &inner ) )
        return "<>" + wrapped( *inner, precedence( *inner ) < detail::PrecUnary, symbols );
    switch ( f.op() )
    {
    case Op::Var:
        if ( symbols )
            if ( const auto* name = symbols->name_of( f.var() ) )
                return *name;
        return "p" + std::to_string( f.var() );
    case Op::Top:
        return "true";
    case Op::Bottom:
        return "false";
    case Op::Not:
        return "~" + wrapped( f.child(), precedence( f.child() ) < detail::PrecUnary, symbols );
    case Op::Box:
        return "[]" + wrapped( f.child(), precedence( f.child() ) < detail::PrecUnary, symbols );
    default:
        break;
    }
    const int p = precedence( f );
    const bool right_assoc = f.op() == Op::Implies;
    const int lp = precedence( f.lhs() );
    const int rp = precedence( f.rhs() );
    const bool lparen = lp < p || ( lp == p && right_assoc );
    const bool rparen = rp < p || ( rp == p && !right_assoc );
    const char* sym = f.op() == Op::And  ? " & "
                    : f.op() == Op::Or   ? " | "
                    : f.op() == Op::Iff  ? " <-> "
                                         : " -> ";
    return wrapped( f.lhs(), lparen, symbols ) + sym + wrapped( f.rhs(), rparen, symbols );
}

} // namespace

Formula parse_formula( std::string_view text, Symbols& symbols )
{
    detail::TokenStream ts{ detail::tokenize( text ) };
    VarIndex max_p = 0;
    bool any_p = false;
    for ( const auto& tok : ts.tokens() )
    {
        std::size_t index = 0;
        if ( tok.kind == Tok::Ident && p_index( tok.text, index ) )
        {
            max_p = std::max( max_p, static_cast< VarIndex >( index ) );
            any_p = true;
        }
        if ( tok.kind == Tok::BoxG || tok.kind == Tok::DiaG || tok.kind == Tok::Ge )
            throw ParseError( "'" + tok.text + "' is not part of the modal language", tok.pos );
    }
    FormulaHooks hooks{ symbols, any_p ? max_p + 1 : 0 };
    detail::ConnectiveParser< Formula, FormulaHooks > parser{ ts, hooks };
    return parser.parse_all();
}

Formula parse_formula( std::string_view text )
{
    Symbols scratch;
    return parse_formula( text, scratch );
}

std::string to_string( const Formula& f, const Symbols* symbols ) { return render( f, symbols ); }

} // namespace mlf
