#include <mlf/conversions.hpp>
#include <mlf/labeling.hpp>

#include <benchmark/benchmark.h>

using namespace mlf;

static void BM_BuildMultiverse( benchmark::State& state )
{
    ControlSignature sig;
    sig.n_buttons = static_cast< std::uint32_t >( state.range( 0 ) );
    sig.n_switches = 2;
    for ( auto _ : state )
        benchmark::DoNotOptimize( Multiverse{ sig } );
}
BENCHMARK( BM_BuildMultiverse )->DenseRange( 2, 8, 2 )->Unit( benchmark::kMicrosecond );

static void BM_VerifyPrebaLabeling( benchmark::State& state )
{
    const auto lm = labeling_preba( static_cast< std::uint32_t >( state.range( 0 ) ), 2 );
    for ( auto _ : state )
        benchmark::DoNotOptimize( verify_labeling( lm.multiverse, lm.labeling ) );
}
BENCHMARK( BM_VerifyPrebaLabeling )->DenseRange( 1, 4 )->Unit( benchmark::kMicrosecond );

static void BM_LongRatchetConversion( benchmark::State& state )
{
    for ( auto _ : state )
    {
        const auto dc = long_to_ratchet_switches( static_cast< std::uint32_t >( state.range( 0 ) ), 2, 4 );
        benchmark::DoNotOptimize( check_switch_independence( dc ) );
    }
}
BENCHMARK( BM_LongRatchetConversion )->DenseRange( 2, 8, 2 )->Unit( benchmark::kMillisecond );
