#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace mlf
{

/// Worker count from `MLF_THREADS`, else the hardware concurrency (at least 1).
[[nodiscard]] unsigned default_threads();

/// Smallest index in [0, count) for which the predicate holds, or `count`.
///
/// `make_predicate()` is called once per worker and must return a callable
/// `bool(std::uint64_t)`; workers never share predicate state. Chunks are
/// claimed in ascending order and scanning stops once every remaining chunk
/// lies above the best hit, so the answer does not depend on scheduling.
template< class MakePredicate >
[[nodiscard]] std::uint64_t first_index_where( std::uint64_t count, unsigned threads, MakePredicate make_predicate )
{
    constexpr std::uint64_t chunk = 1U << 14;
    if ( threads <= 1 || count <= chunk )
    {
        auto pred = make_predicate();
        for ( std::uint64_t i = 0; i < count; ++i )
            if ( pred( i ) )
                return i;
        return count;
    }

    std::atomic< std::uint64_t > best{ count };
    std::atomic< std::uint64_t > next{ 0 };
    auto worker = [ & ] {
        auto pred = make_predicate();
        for ( ;; )
        {
            const std::uint64_t start = next.fetch_add( chunk );
            if ( start >= count || start >= best.load() )
                return;
            const std::uint64_t stop = std::min( count, start + chunk );
            for ( std::uint64_t i = start; i < stop; ++i )
            {
                if ( pred( i ) )
                {
                    std::uint64_t seen = best.load();
                    while ( i < seen && !best.compare_exchange_weak( seen, i ) )
                    {
                    }
                    return;
                }
            }
        }
    };
    std::vector< std::jthread > pool;
    const unsigned n = std::min< std::uint64_t >( threads, ( count + chunk - 1 ) / chunk );
    pool.reserve( n );
    for ( unsigned t = 0; t < n; ++t )
        pool.emplace_back( worker );
    pool.clear();
    return best.load();
}

} // namespace mlf
