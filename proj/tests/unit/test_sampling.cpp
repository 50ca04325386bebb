#include <mlf/sampling.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace mlf;

namespace
{

std::size_t height( const Formula& f )
{
    const Formula* inner = nullptr;
    if ( f.is_diamond( &inner ) )
        return 1 + height( *inner );
    if ( f.is_atom() )
        return 0;
    if ( f.is_unary() )
        return 1 + height( f.child() );
    return 1 + std::max( height( f.lhs() ), height( f.rhs() ) );
}

} // namespace

TEST( Sampling, RandomFormulaRespectsBounds )
{
    Rng rng{ 3 };
    for ( int i = 0; i < 2000; ++i )
    {
        const auto f = random_formula( rng, 2, 3 );
        EXPECT_LE( height( f ), 3U );
        for ( auto v : variables( f ) )
            EXPECT_LT( v, 2U );
    }
}

TEST( Sampling, SeedReproducible )
{
    Rng a{ 42 }, b{ 42 };
    for ( int i = 0; i < 100; ++i )
        EXPECT_EQ( random_formula( a, 2, 3 ), random_formula( b, 2, 3 ) );
    Rng c{ 42 }, d{ 42 };
    const auto lm = labeling_preba( 2, 1 );
    const auto s1 = sample_roundtrips( lm, c, 50, 3, 2 );
    const auto s2 = sample_roundtrips( lm, d, 50, 3, 2 );
    EXPECT_EQ( s1.agreements, s2.agreements );
    EXPECT_EQ( c(), d() );
}

TEST( Sampling, EnumerationIsCompleteAndDistinct )
{
    const auto zero = enumerate_formulas( 2, 0 );
    EXPECT_EQ( zero.size(), 2U );
    // One variable at depth one: p0, its three unary forms and three binary ones.
    const auto one = enumerate_formulas( 1, 1 );
    EXPECT_EQ( one.size(), 1U + 3U + 3U );
    const auto two = enumerate_formulas( 2, 2 );
    std::set< std::string > seen;
    for ( const auto& f : two )
    {
        EXPECT_LE( height( f ), 2U );
        EXPECT_TRUE( seen.insert( to_string( f ) ).second ) << to_string( f );
    }
    // Every random depth-2 formula is enumerated.
    Rng rng{ 5 };
    for ( int i = 0; i < 500; ++i )
        EXPECT_TRUE( seen.contains( to_string( random_formula( rng, 2, 2 ) ) ) );
    EXPECT_THROW( (void)enumerate_formulas( 2, 3, 1000 ), std::length_error );
}

TEST( Sampling, RandomModelsAndFrames )
{
    Rng rng{ 9 };
    for ( int i = 0; i < 200; ++i )
    {
        const auto f = random_transitive_frame( rng, 1 + pick( rng, 5 ) );
        EXPECT_TRUE( is_transitive( f ) );
        const auto m = random_model( rng, f, 3 );
        EXPECT_EQ( m.valuation().size(), 3U );
        for ( const auto& [ v, mask ] : m.valuation() )
            EXPECT_EQ( mask & ~f.all(), 0U );
    }
}
