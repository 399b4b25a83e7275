#pragma once

#include <map>
#include <vector>

#include "fnoise/fock.hpp"
#include "fnoise/partitions.hpp"

// Independent reference implementations used only to cross-check the engines.

namespace fnoise::oracle {

/// Coarsest adapted refinement by searching every refinement of R.
SetPartition coarsest_adapted_bruteforce(const SetPartition& r, const ColorFilterTuple& cf,
                                         const std::vector<SetPartition>& all_partitions);

/// Element of the full tensor power: ordered mode tuple to coefficient.
using Tensor = std::map<std::vector<int>, Scalar>;

/// Occupation basis vector expanded as a symmetric tensor.
Tensor to_tensor(const FockSpace& space, const Vector& v);
/// Coefficients of a symmetric tensor in the occupation basis.
Vector from_tensor(const FockSpace& space, const Tensor& t);

/// (1/n!) sum over permutations of the tensor slots.
Tensor symmetrize(const Tensor& t);
/// symmetrize(a (x) b).
Tensor sym_product(const Tensor& a, const Tensor& b);
Scalar inner(const Tensor& a, const Tensor& b);

/// Particle-level actions on symmetric tensors over all d*M modes:
/// creation sqrt(n+1) Sym(f (x) psi) with f supported on color k;
/// annihilation sqrt(n) (<f| (x) I) psi;
/// number sum_i (I ... T_k ... I) psi;
/// filter keeps only factors whose color lies in sigma.
Tensor tensor_creation(const FockSpace& space, const Tensor& psi, const ModeVector& f, int k);
Tensor tensor_annihilation(const FockSpace& space, const Tensor& psi, const ModeVector& f, int k);
Tensor tensor_number(const FockSpace& space, const Tensor& psi, const DenseMatrix& T, int k);
Tensor tensor_filter(const FockSpace& space, const Tensor& psi, const Filter& sigma);

/// Sum of t^{b(R)} over monochromatic R where a position m strictly inside
/// another block's span separates it unless the block color lies in sigma_m,
/// or, when m is a middle element of its own block, in sigma_m with k_m added.
/// This is the value the Lambda-word expectation produces: middle elements act
/// through the number part, whose projection spares the particle's own color.
Rational poisson_noise_role_aware(const ColorFilterTuple& cf, const Rational& t,
                                  const EnumerationGuard& guard = {});

/// Eigenvalue of the m-free number operator on a basis state from its colors:
/// N_{k_n} when k_n <= m and k_n - 1 is present (k_0 = 0 counts), else 0.
double mfree_number_direct(const FockSpace& space, int m, std::size_t state);

}  // namespace fnoise::oracle
