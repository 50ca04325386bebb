#include "mlf/parallel.hpp"

#include <cstdlib>
#include <string>

namespace mlf
{

unsigned default_threads()
{
    if ( const char* env = std::getenv( "MLF_THREADS" ) )
    {
        try
        {
            const long v = std::stol( env );
            if ( v >= 1 )
                return static_cast< unsigned >( v );
        }
        catch ( const std::exception& )
        {
        }
    }
    return std::max( 1U, std::thread::hardware_concurrency() );
}

} // namespace mlf
