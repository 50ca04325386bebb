#include <mlf/formula.hpp>
#include <mlf/sampling.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mlf;

TEST( Formula, ParsesAtom )
{
    EXPECT_EQ( parse_formula( "p0" ), var( 0 ) );
    EXPECT_EQ( parse_formula( "  p12 " ), var( 12 ) );
}

TEST( Formula, ParsesDot2 )
{
    const auto f = parse_formula( "<>[]p0 -> []<>p0" );
    EXPECT_EQ( f, implies( diamond( box( var( 0 ) ) ), box( diamond( var( 0 ) ) ) ) );
    // Stored expanded.
    EXPECT_EQ( f.lhs().op(), Op::Not );
    EXPECT_EQ( f.lhs().child().op(), Op::Box );
}

TEST( Formula, ImplicationIsRightAssociative )
{
    EXPECT_EQ( parse_formula( "p0 -> p1 -> p2" ), implies( var( 0 ), implies( var( 1 ), var( 2 ) ) ) );
    EXPECT_EQ( parse_formula( "(p0 -> p1) -> p2" ), implies( implies( var( 0 ), var( 1 ) ), var( 2 ) ) );
}

TEST( Formula, Precedence )
{
    EXPECT_EQ( parse_formula( "~p0 & p1 | p2 -> p3 <-> p4" ),
               iff( implies( disj( conj( neg( var( 0 ) ), var( 1 ) ), var( 2 ) ), var( 3 ) ), var( 4 ) ) );
    EXPECT_EQ( parse_formula( "[]~<>p0" ), box( neg( diamond( var( 0 ) ) ) ) );
    EXPECT_EQ( parse_formula( "true & false" ), conj( top(), bottom() ) );
}

TEST( Formula, Prints )
{
    EXPECT_EQ( to_string( var( 0 ) ), "p0" );
    EXPECT_EQ( to_string( parse_formula( "<>[]p0 -> []<>p0" ) ), "<>[]p0 -> []<>p0" );
    EXPECT_EQ( to_string( conj( disj( var( 0 ), var( 1 ) ), var( 2 ) ) ), "(p0 | p1) & p2" );
    EXPECT_EQ( to_string( implies( implies( var( 0 ), var( 1 ) ), var( 2 ) ) ), "(p0 -> p1) -> p2" );
    EXPECT_EQ( to_string( implies( var( 0 ), implies( var( 1 ), var( 2 ) ) ) ), "p0 -> p1 -> p2" );
}

TEST( Formula, IdentifiersAreInterned )
{
    Symbols syms;
    const auto f = parse_formula( "rain -> wet & rain", syms );
    ASSERT_EQ( variables( f ).size(), 2U );
    EXPECT_EQ( to_string( f, &syms ), "rain -> wet & rain" );
}

TEST( Formula, SyntaxErrorsCarryPosition )
{
    try
    {
        (void)parse_formula( "p0 & (p1 | " );
        FAIL() << "expected a parse error";
    }
    catch ( const ParseError& e )
    {
        EXPECT_GE( e.position(), 10U );
    }
    EXPECT_THROW( (void)parse_formula( "" ), ParseError );
    EXPECT_THROW( (void)parse_formula( "p0 p1" ), ParseError );
    EXPECT_THROW( (void)parse_formula( "p0 & & p1" ), ParseError );
    EXPECT_THROW( (void)parse_formula( "(p0" ), ParseError );
    EXPECT_THROW( (void)parse_formula( "p0 $ p1" ), ParseError );
}

TEST( Formula, ModalDepth )
{
    EXPECT_EQ( modal_depth( var( 0 ) ), 0U );
    EXPECT_EQ( modal_depth( parse_formula( "<>[]p0 -> []<>p0" ) ), 2U );
    EXPECT_EQ( modal_depth( parse_formula( "[]p0 & <>(p1 | [][]p2)" ) ), 3U );
}

TEST( Formula, Substitute )
{
    EXPECT_EQ( substitute( var( 0 ), { { 0, box( var( 1 ) ) } } ), box( var( 1 ) ) );
    const auto four = parse_formula( "[]p0 -> [][]p0" );
    EXPECT_EQ( substitute( four, { { 0, parse_formula( "p1 & p2" ) } } ), parse_formula( "[](p1 & p2) -> [][](p1 & p2)" ) );
    // Simultaneous, not sequential.
    EXPECT_EQ( substitute( parse_formula( "p0 & p1" ), { { 0, var( 1 ) }, { 1, var( 0 ) } } ), parse_formula( "p1 & p0" ) );
}

TEST( Formula, SubstitutionPreservesExpandedDiamond )
{
    const auto f = substitute( parse_formula( "<>[]p0" ), { { 0, parse_formula( "p1 -> p2" ) } } );
    // Built independently, node by node.
    const Formula inner = box( implies( var( 1 ), var( 2 ) ) );
    const Formula not_inner = Formula::make( Op::Not, 0, &inner, nullptr );
    const Formula boxed = Formula::make( Op::Box, 0, &not_inner, nullptr );
    const Formula expected = Formula::make( Op::Not, 0, &boxed, nullptr );
    EXPECT_EQ( f, expected );
    EXPECT_EQ( to_string( f ), "<>[](p1 -> p2)" );
}

TEST( Formula, RoundTripRandom )
{
    Rng rng{ 7 };
    for ( int i = 0; i < 10000; ++i )
    {
        const auto f = random_formula( rng, 3, 6 );
        const auto printed = to_string( f );
        ASSERT_EQ( parse_formula( printed ), f ) << printed;
        ASSERT_EQ( parse_formula( oracle::full_parens( f ) ), f ) << oracle::full_parens( f );
    }
}

TEST( Formula, SubstitutionComposes )
{
    Rng rng{ 11 };
    for ( int i = 0; i < 500; ++i )
    {
        const auto f = random_formula( rng, 3, 4 );
        Substitution s{ { 0, random_formula( rng, 3, 2 ) }, { 2, random_formula( rng, 3, 2 ) } };
        Substitution t{ { 1, random_formula( rng, 3, 2 ) }, { 0, random_formula( rng, 3, 2 ) } };
        ASSERT_EQ( substitute( substitute( f, s ), t ), substitute( f, compose( s, t ) ) );
        std::size_t inner = 0;
        for ( const auto& [ v, g ] : s )
            inner = std::max( inner, modal_depth( g ) );
        ASSERT_LE( modal_depth( substitute( f, s ) ), modal_depth( f ) + inner );
    }
}

TEST( Formula, SubformulasChildrenFirst )
{
    const auto f = parse_formula( "[]p0 -> p0" );
    const auto subs = subformulas( f );
    ASSERT_EQ( subs.size(), 3U );
    EXPECT_EQ( subs.front(), var( 0 ) );
    EXPECT_EQ( subs.back(), f );
}
