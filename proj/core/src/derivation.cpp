#include "mlf/theories.hpp"

#include <algorithm>

namespace mlf
{

namespace
{

void collect_atoms( const Formula& f, std::vector< Formula >& atoms )
{
    switch ( f.op() )
    {
    case Op::Var:
    case Op::Box:
        if ( std::find( atoms.begin(), atoms.end(), f ) == atoms.end() )
            atoms.push_back( f );
        return;
    case Op::Top:
    case Op::Bottom:
        return;
    case Op::Not:
        collect_atoms( f.child(), atoms );
        return;
    default:
        collect_atoms( f.lhs(), atoms );
        collect_atoms( f.rhs(), atoms );
    }
}

bool truth( const Formula& f, const std::vector< Formula >& atoms, unsigned row )
{
    switch ( f.op() )
    {
    case Op::Var:
    case Op::Box:
        return ( row >> ( std::find( atoms.begin(), atoms.end(), f ) - atoms.begin() ) ) & 1U;
    case Op::Top: return true;
    case Op::Bottom: return false;
    case Op::Not: return !truth( f.child(), atoms, row );
    case Op::And: return truth( f.lhs(), atoms, row ) && truth( f.rhs(), atoms, row );
    case Op::Or: return truth( f.lhs(), atoms, row ) || truth( f.rhs(), atoms, row );
    case Op::Implies: return !truth( f.lhs(), atoms, row ) || truth( f.rhs(), atoms, row );
    case Op::Iff: return truth( f.lhs(), atoms, row ) == truth( f.rhs(), atoms, row );
    }
    return false;
}

DerivationCheck fail( DerivationCheck c, std::optional< std::size_t > step, std::string reason )
{
    c.ok = false;
    c.failed_step = step;
    c.reason = std::move( reason );
    return c;
}

} // namespace

std::string_view to_string( Rule r )
{
    switch ( r )
    {
    case Rule::Axiom: return "axiom";
    case Rule::TheoryAxiom: return "theory-axiom";
    case Rule::Tautology: return "taut";
    case Rule::ModusPonens: return "mp";
    case Rule::Necessitation: return "nec";
    }
    return "?";
}

bool is_tautology( const Formula& f )
{
    std::vector< Formula > atoms;
    collect_atoms( f, atoms );
    if ( atoms.size() > tautology_atom_limit )
        throw std::length_error( "truth table over " + std::to_string( atoms.size() ) + " atoms exceeds the limit of "
                                 + std::to_string( tautology_atom_limit ) );
    for ( unsigned row = 0; row < ( 1U << atoms.size() ); ++row )
        if ( !truth( f, atoms, row ) )
            return false;
    return true;
}

DerivationCheck check_derivation( Theory t, const Derivation& d )
{
    if ( !has_axioms( t ) )
        throw std::invalid_argument( std::string( to_string( t ) ) + " has no axiom system to derive in" );
    const auto allowed = axioms( t );
    DerivationCheck c;
    auto& proved = c.conclusions;

    for ( std::size_t i = 0; i < d.steps.size(); ++i )
    {
        const auto& s = d.steps[ i ];
        Formula concl;
        switch ( s.rule )
        {
        case Rule::Axiom:
        {
            if ( std::find( allowed.begin(), allowed.end(), s.scheme ) == allowed.end() )
                return fail( std::move( c ), i,
                             "axiom " + std::string( to_string( s.scheme ) ) + " is not part of " + std::string( to_string( t ) ) );
            if ( s.args.size() != arity( s.scheme ) )
                return fail( std::move( c ), i,
                             "axiom " + std::string( to_string( s.scheme ) ) + " takes " + std::to_string( arity( s.scheme ) )
                                 + " argument(s)" );
            concl = instantiate( s.scheme, s.args );
            break;
        }
        case Rule::TheoryAxiom:
        {
            if ( !s.formula )
                return fail( std::move( c ), i, "theory axiom step without a formula" );
            const bool ok = std::any_of( allowed.begin(), allowed.end(),
                                         [ & ]( AxiomScheme a ) { return match_instance( a, *s.formula ).has_value(); } );
            if ( !ok )
                return fail( std::move( c ), i,
                             "formula is not an instance of an axiom of " + std::string( to_string( t ) ) );
            concl = *s.formula;
            break;
        }
        case Rule::Tautology:
        {
            if ( !s.formula )
                return fail( std::move( c ), i, "tautology step without a formula" );
            try
            {
                if ( !is_tautology( *s.formula ) )
                    return fail( std::move( c ), i, "formula is not a propositional tautology" );
            }
            catch ( const std::length_error& e )
            {
                return fail( std::move( c ), i, e.what() );
            }
            concl = *s.formula;
            break;
        }
        case Rule::ModusPonens:
        {
            if ( s.from >= i || s.imp >= i )
                return fail( std::move( c ), i, "modus ponens must cite earlier steps" );
            const Formula& imp = proved[ s.imp ];
            if ( imp.op() != Op::Implies || !( imp.lhs() == proved[ s.from ] ) )
                return fail( std::move( c ), i,
                             "step " + std::to_string( s.imp ) + " is not an implication from step " + std::to_string( s.from ) );
            concl = imp.rhs();
            break;
        }
        case Rule::Necessitation:
        {
            if ( s.from >= i )
                return fail( std::move( c ), i, "necessitation must cite an earlier step" );
            concl = box( proved[ s.from ] );
            break;
        }
        }
        if ( s.formula && s.rule != Rule::TheoryAxiom && s.rule != Rule::Tautology && !( *s.formula == concl ) )
            return fail( std::move( c ), i, "claimed formula differs from the derived " + to_string( concl ) );
        proved.push_back( std::move( concl ) );
    }

    if ( proved.empty() )
        return fail( std::move( c ), std::nullopt, "derivation has no steps" );
    if ( !( proved.back() == d.goal ) )
        return fail( std::move( c ), d.steps.size() - 1, "last step proves " + to_string( proved.back() ) + ", not the goal" );
    c.ok = true;
    return c;
}

} // namespace mlf
