#include "lexer.hpp"
#include "mlf/control.hpp"

namespace mlf
{

namespace
{

using detail::Tok;

const std::shared_ptr< const ControlSentence::Node >& top_node()
{
    static const auto node = std::make_shared< const ControlSentence::Node >( ControlSentence::Node{ CtlOp::Top, 0, nullptr, nullptr } );
    return node;
}

struct SentenceHooks
{
    static bool is_prefix( Tok k ) { return k == Tok::Not || k == Tok::BoxG || k == Tok::DiaG; }

    static ControlSentence prefix( Tok k, const ControlSentence& s )
    {
        switch ( k )
        {
        case Tok::Not: return control::neg( s );
        case Tok::BoxG: return control::box_g( s );
        default: return control::dia_g( s );
        }
    }

    static ControlSentence binary( Tok k, const ControlSentence& a, const ControlSentence& b )
    {
        switch ( k )
        {
        case Tok::And: return control::conj( a, b );
        case Tok::Or: return control::disj( a, b );
        case Tok::Implies: return control::implies( a, b );
        default: return control::iff( a, b );
        }
    }

    static std::uint32_t number( detail::TokenStream& ts )
    {
        const auto& tok = ts.expect( Tok::Number, "a number" );
        std::size_t v = 0;
        if ( !detail::parse_index( tok.text, v ) )
            throw ParseError( "number too large", tok.pos );
        return static_cast< std::uint32_t >( v );
    }

    static ControlSentence atom( detail::TokenStream& ts )
    {
        const auto tok = ts.peek();
        if ( tok.kind == Tok::Box || tok.kind == Tok::Diamond )
            throw ParseError( "use [G] and <G> for the modalities of control sentences", tok.pos );
        if ( tok.kind != Tok::Ident )
            throw ParseError( "expected a control sentence, found '" + tok.text + "'", tok.pos );
        ts.next();
        if ( tok.text == "true" )
            return control::top();
        if ( tok.text == "false" )
            return control::bottom();
        if ( tok.text == "r" || tok.text == "L" )
        {
            ts.expect( Tok::Ge, "'>='" );
            const auto v = number( ts );
            return tok.text == "r" ? control::ratchet_at_least( v ) : control::long_at_least( v );
        }
        std::size_t index = 0;
        if ( tok.text.size() >= 2 && detail::parse_index( std::string_view( tok.text ).substr( 1 ), index ) )
        {
            const auto i = static_cast< std::uint32_t >( index );
            switch ( tok.text[ 0 ] )
            {
            case 'b': return control::button( i );
            case 's': return control::switch_on( i );
            case 'w': return control::weak( i );
            default: break;
            }
        }
        throw ParseError( "unknown control atom '" + tok.text + "'", tok.pos );
    }
};

int precedence( CtlOp op )
{
    switch ( op )
    {
    case CtlOp::Not:
    case CtlOp::BoxG:
    case CtlOp::DiaG: return detail::PrecUnary;
    case CtlOp::And: return detail::PrecAnd;
    case CtlOp::Or: return detail::PrecOr;
    case CtlOp::Implies: return detail::PrecImplies;
    case CtlOp::Iff: return detail::PrecIff;
    default: return detail::PrecAtom;
    }
}

void render( const ControlSentence& s, std::string& out );

void render_wrapped( const ControlSentence& s, bool parens, std::string& out )
{
    if ( parens )
        out += '(';
    render( s, out );
    if ( parens )
        out += ')';
}

void render( const ControlSentence& s, std::string& out )
{
    switch ( s.op() )
    {
    case CtlOp::Button: out += "b" + std::to_string( s.index() ); return;
    case CtlOp::Switch: out += "s" + std::to_string( s.index() ); return;
    case CtlOp::RatchetAtLeast: out += "r>=" + std::to_string( s.index() ); return;
    case CtlOp::Weak: out += "w" + std::to_string( s.index() ); return;
    case CtlOp::LongAtLeast: out += "L>=" + std::to_string( s.index() ); return;
    case CtlOp::Top: out += "true"; return;
    case CtlOp::Bottom: out += "false"; return;
    case CtlOp::Not:
    case CtlOp::BoxG:
    case CtlOp::DiaG:
        out += s.op() == CtlOp::Not ? "~" : s.op() == CtlOp::BoxG ? "[G]" : "<G>";
        render_wrapped( s.child(), precedence( s.child().op() ) < detail::PrecUnary, out );
        return;
    default: break;
    }
    const int p = precedence( s.op() );
    const bool right_assoc = s.op() == CtlOp::Implies;
    const int lp = precedence( s.lhs().op() );
    const int rp = precedence( s.rhs().op() );
    render_wrapped( s.lhs(), lp < p || ( lp == p && right_assoc ), out );
    out += s.op() == CtlOp::And ? " & " : s.op() == CtlOp::Or ? " | " : s.op() == CtlOp::Iff ? " <-> " : " -> ";
    render_wrapped( s.rhs(), rp < p || ( rp == p && !right_assoc ), out );
}

bool same( const ControlSentence::Node* a, const ControlSentence::Node* b )
{
    if ( a == b )
        return true;
    if ( !a || !b || a->op != b->op || a->index != b->index )
        return false;
    return same( a->a.get(), b->a.get() ) && same( a->b.get(), b->b.get() );
}

} // namespace

ControlSentence::ControlSentence() : _node{ top_node() } {}

CtlOp ControlSentence::op() const noexcept { return _node->op; }
std::uint32_t ControlSentence::index() const noexcept { return _node->index; }

ControlSentence ControlSentence::child() const
{
    if ( !is_unary() )
        throw std::logic_error( "control sentence has no single child" );
    return ControlSentence{ _node->a };
}

ControlSentence ControlSentence::lhs() const
{
    if ( !is_binary() )
        throw std::logic_error( "control sentence is not binary" );
    return ControlSentence{ _node->a };
}

ControlSentence ControlSentence::rhs() const
{
    if ( !is_binary() )
        throw std::logic_error( "control sentence is not binary" );
    return ControlSentence{ _node->b };
}

bool operator==( const ControlSentence& a, const ControlSentence& b ) noexcept { return same( a._node.get(), b._node.get() ); }

ControlSentence ControlSentence::make( CtlOp op, std::uint32_t index, const ControlSentence* a, const ControlSentence* b )
{
    return ControlSentence{ std::make_shared< const Node >(
        Node{ op, index, a ? a->_node : nullptr, b ? b->_node : nullptr } ) };
}

namespace control
{

ControlSentence button( std::uint32_t i ) { return ControlSentence::make( CtlOp::Button, i ); }
ControlSentence switch_on( std::uint32_t i ) { return ControlSentence::make( CtlOp::Switch, i ); }
ControlSentence ratchet_at_least( std::uint32_t k ) { return ControlSentence::make( CtlOp::RatchetAtLeast, k ); }
ControlSentence weak( std::uint32_t i ) { return ControlSentence::make( CtlOp::Weak, i ); }
ControlSentence long_at_least( std::uint32_t v ) { return ControlSentence::make( CtlOp::LongAtLeast, v ); }
ControlSentence top() { return {}; }
ControlSentence bottom()
{
    static const ControlSentence b = ControlSentence::make( CtlOp::Bottom, 0 );
    return b;
}
ControlSentence neg( const ControlSentence& a ) { return ControlSentence::make( CtlOp::Not, 0, &a ); }
ControlSentence conj( const ControlSentence& a, const ControlSentence& b ) { return ControlSentence::make( CtlOp::And, 0, &a, &b ); }
ControlSentence disj( const ControlSentence& a, const ControlSentence& b ) { return ControlSentence::make( CtlOp::Or, 0, &a, &b ); }
ControlSentence implies( const ControlSentence& a, const ControlSentence& b )
{
    return ControlSentence::make( CtlOp::Implies, 0, &a, &b );
}
ControlSentence iff( const ControlSentence& a, const ControlSentence& b ) { return ControlSentence::make( CtlOp::Iff, 0, &a, &b ); }
ControlSentence box_g( const ControlSentence& a ) { return ControlSentence::make( CtlOp::BoxG, 0, &a ); }
ControlSentence dia_g( const ControlSentence& a ) { return ControlSentence::make( CtlOp::DiaG, 0, &a ); }

ControlSentence conj_all( std::span< const ControlSentence > xs )
{
    if ( xs.empty() )
        return top();
    ControlSentence out = xs[ 0 ];
    for ( std::size_t i = 1; i < xs.size(); ++i )
        out = conj( out, xs[ i ] );
    return out;
}

ControlSentence disj_all( std::span< const ControlSentence > xs )
{
    if ( xs.empty() )
        return bottom();
    ControlSentence out = xs[ 0 ];
    for ( std::size_t i = 1; i < xs.size(); ++i )
        out = disj( out, xs[ i ] );
    return out;
}

} // namespace control

ControlSentence parse_control_sentence( std::string_view text )
{
    detail::TokenStream ts{ detail::tokenize( text ) };
    SentenceHooks hooks;
    detail::ConnectiveParser< ControlSentence, SentenceHooks > parser{ ts, hooks };
    return parser.parse_all();
}

std::string to_string( const ControlSentence& s )
{
    std::string out;
    render( s, out );
    return out;
}

} // namespace mlf
