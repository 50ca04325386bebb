#include <mlf/frames.hpp>

#include <benchmark/benchmark.h>

using namespace mlf;

static void BM_EnumeratePreorders( benchmark::State& state )
{
    const auto n = static_cast< std::size_t >( state.range( 0 ) );
    for ( auto _ : state )
        benchmark::DoNotOptimize( enumerate( FrameClass::ReflexiveTransitive, n ) );
}
BENCHMARK( BM_EnumeratePreorders )->DenseRange( 3, 5 );

static void BM_EnumerateTopless( benchmark::State& state )
{
    const auto n = static_cast< std::size_t >( state.range( 0 ) );
    for ( auto _ : state )
        benchmark::DoNotOptimize( enumerate( FrameClass::ToplessPreBooleanAlgebra, n ) );
}
BENCHMARK( BM_EnumerateTopless )->DenseRange( 3, 7, 2 );

static void BM_ClassifyPowerset( benchmark::State& state )
{
    const Frame f = powerset_frame( static_cast< std::size_t >( state.range( 0 ) ), 2, false );
    for ( auto _ : state )
        benchmark::DoNotOptimize( classify( f, FrameClass::PreBooleanAlgebra ) );
}
BENCHMARK( BM_ClassifyPowerset )->DenseRange( 1, 4 );
