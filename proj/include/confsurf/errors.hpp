#pragma once

#include <stdexcept>
#include <string>

namespace confsurf {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid combinatorics: unpaired sides, orientation mismatch, broken vertex
// links, impossible Euler characteristic, bad indices.
class MeshError : public Error {
public:
    using Error::Error;
};

// Invalid geometry of a decorated triangle or edge: violated triangle
// inequality, intersecting vertex circles, tangency where a formula divides
// by a power, inconsistent angle data.
class GeometryError : public Error {
public:
    using Error::Error;
};

// A conformal change of scale factors produced a non-realizable metric
// (non-positive squared length or broken triangle inequality). The solver's
// line search catches this to shorten the step.
class InfeasibleScaleError : public Error {
public:
    using Error::Error;
};

// A diagonal flip was requested on an edge whose quadrilateral is not convex,
// or whose two sides bound the same face.
class NotFlippableError : public Error {
public:
    using Error::Error;
};

// An operation requiring a weighted Delaunay input was called on a
// triangulation with a negative edge margin.
class NonDelaunayError : public Error {
public:
    using Error::Error;
};

// Solver failure: line search exhausted, iteration cap, divergence guard, or a
// violated symmetry that signals an inconsistent problem.
class SolveError : public Error {
public:
    using Error::Error;
};

// Surface file syntax or consistency error; carries the 1-based line number
// (0 when the error is not tied to a specific line).
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line_number)
        : Error(what), line(line_number) {}
    int line;
};

}  // namespace confsurf
