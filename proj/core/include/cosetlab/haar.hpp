#pragma once

#include "cosetlab/blockmat.hpp"
#include "cosetlab/permutation.hpp"
#include "cosetlab/random_stream.hpp"

namespace cosetlab {

/// Haar-distributed element of O(n): QR of a Gaussian matrix with the columns
/// of Q multiplied by the signs of diag(R).
RealMatrix haar_orthogonal(int n, RandomStream& rng);

/// Haar-distributed element of U(n): QR of a complex Gaussian matrix with the
/// columns of Q multiplied by the phases diag(R) / |diag(R)|.
Matrix haar_unitary(int n, RandomStream& rng);

/// Uniform element of S(n) by Fisher-Yates shuffle.
Permutation uniform_permutation(int n, RandomStream& rng);

/// Leading k x k principal block.
RealMatrix top_block(const RealMatrix& u_full, int k);

}  // namespace cosetlab
