#pragma once

#include <stdexcept>
#include <string>

namespace djm {

// bad input files, out-of-range values, malformed rows (CLI exit code 2)
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad command line / configuration (CLI exit code 1)
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a broken internal invariant; the run cannot continue (CLI exit code 3)
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace djm
