#pragma once
#include "clat/errors.hpp"

namespace clat {

// Truncation policy shared by all series evaluations. rel_tol is relative to
// the running sum, so log-singular sums near their singularity still terminate.
struct series_control {
    long max_terms = 10000;
    double rel_tol = 1e-12;

    void validate() const {
        if (!(rel_tol > 0.0) || rel_tol > 1e-3)
            throw domain_error("series rel_tol must be in (0, 1e-3]");
        if (max_terms < 50)
            throw domain_error("series max_terms must be >= 50");
    }
};

}  // namespace clat
