#pragma once

#include <stdexcept>
#include <string>

namespace tropcrit {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// arithmetic
struct zero_division : error { using error::error; };
struct negative_valuation : error { using error::error; };

// shapes and indices
struct dimension_mismatch : error { using error::error; };
struct length_mismatch : error { using error::error; };
struct index_out_of_range : error { using error::error; };
struct unsupported_dimension : error { using error::error; };

// lattice
struct rank_deficient : error { using error::error; };

// polytope: constructor rejects unbounded/empty/redundant input
struct invalid_polytope : error { using error::error; };

// potential / tropical
struct zero_coordinate : error { using error::error; };
struct zero_polynomial : error { using error::error; };

// serialization
struct parse_error : error { using error::error; };

// io (CLI maps this to exit 4)
struct io_error : error { using error::error; };

} // namespace tropcrit
