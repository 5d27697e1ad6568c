#pragma once

// Internal decomposition engine. A projective-free module with soc = rad is
// the same data as a pair of matrices (alpha, beta): complement-of-socle
// coordinates mapping into radical coordinates. Splitting the module into
// indecomposables is then the classification of that matrix pencil: singular
// chains give the odd-dimensional string modules, the regular part splits
// into an invertible-alpha piece (elementary divisors f^n) and a nilpotent
// piece (the parameter at infinity). Every peel returns explicit bases, so
// the caller can verify the conjugation certificate exactly.

#include <vector>

#include "kleinperm/catalogue.hpp"
#include "kleinperm/module.hpp"

namespace kleinperm::detail {

struct Block {
    IndecompLabel label;
    std::vector<Vec> basis;  // module coordinates, catalogue basis order
};

/// Full structural decomposition; blocks carry bases in m's coordinates.
std::vector<Block> decompose_into_blocks(const KV4Module& m);

/// Minimal polynomial of a square matrix.
FieldPoly min_poly(const ExactMatrix& t);

/// Minimal monic g with g(T) v = 0.
FieldPoly vector_order(const ExactMatrix& t, const Vec& v);

/// Horner evaluation of g at T.
ExactMatrix eval_poly(const FieldPoly& g, const ExactMatrix& t);

struct CyclicChain {
    Vec generator;
    FieldPoly factor;  // monic irreducible f
    int height = 0;    // generator order is f^height
};

/// Cyclic decomposition of the operator T: generators of cyclic summands
/// with their primary data, heights descending within each factor.
std::vector<CyclicChain> cyclic_decomposition(const ExactMatrix& t);

} // namespace kleinperm::detail
