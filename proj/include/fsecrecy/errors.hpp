#pragma once

#include <stdexcept>
#include <string>

namespace fsecrecy {

// Argument outside the documented domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Evaluation requested exactly at a pole (gamma at a non-positive integer,
// hypergeometric c parameter at a non-positive integer, ...).
class pole_error : public domain_error {
public:
    using domain_error::domain_error;
};

// Density evaluated at a point where it diverges (still integrable).
class singularity_error : public domain_error {
public:
    using domain_error::domain_error;
};

// An iterative scheme stalled before reaching its target tolerance.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// No vertical contour abscissa separates the left/right pole families,
// or the separating gap is too narrow to integrate through.
class contour_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameter degeneracy (coincident pole families) that epsilon separation
// could not resolve.
class degenerate_parameter_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fsecrecy
