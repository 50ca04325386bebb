#include <mlf/corpus.hpp>
#include <mlf/kripke.hpp>
#include <mlf/sampling.hpp>
#include <mlf/theories.hpp>

#include <benchmark/benchmark.h>

using namespace mlf;

static void BM_DecideThreeAlternative( benchmark::State& state )
{
    const auto bound = static_cast< std::size_t >( state.range( 0 ) );
    ValidityOptions opts;
    opts.threads = 1;
    for ( auto _ : state )
        benchmark::DoNotOptimize( decide_upto( FrameClass::ToplessPreBooleanAlgebra, three_alternative(), bound, opts ) );
}
BENCHMARK( BM_DecideThreeAlternative )->DenseRange( 3, 6 )->Unit( benchmark::kMillisecond );

static void BM_Eval( benchmark::State& state )
{
    Rng rng{ 1 };
    const auto m = random_model( rng, powerset_frame( 3, 2, false ), 2 );
    const auto f = random_formula( rng, 2, static_cast< std::size_t >( state.range( 0 ) ) );
    for ( auto _ : state )
        benchmark::DoNotOptimize( m.satisfying( f ) );
}
BENCHMARK( BM_Eval )->DenseRange( 2, 6, 2 );

static void BM_Bisimulation( benchmark::State& state )
{
    Rng rng{ 2 };
    const auto m = random_model( rng, powerset_frame( static_cast< std::size_t >( state.range( 0 ) ), 2, false ), 2 );
    const auto ex = toplessify( m );
    for ( auto _ : state )
        benchmark::DoNotOptimize( largest_bisimulation( m, ex.model ) );
}
BENCHMARK( BM_Bisimulation )->DenseRange( 1, 3 );
