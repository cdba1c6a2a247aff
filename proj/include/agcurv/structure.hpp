#pragma once

// Kirichenko structure tensors of a Kenmotsu-type instance.
//
// Every array is indexed by Latin indices only. Storage is 0-based: Latin
// index a = 1..n lives at position a - 1. Field comments give the index order
// of the stored array and the tensor it houses.

#include <cstdint>
#include <string>
#include <vector>

#include "agcurv/tensor.hpp"

namespace agcurv {

/// Latin-indexed array of the given rank (extent n).
DenseArray latin_array(int n, int rank);

struct StructureData {
  int n = 0;

  DenseArray B3u;  // (a,b,c): B^{ab}_c
  DenseArray B3d;  // (a,b,c): B_{ab}^c
  DenseArray A22;  // (a,d,b,c): A^{ad}_{bc}
  DenseArray A13;  // (a,b,c,d): A^a_{bcd}
  DenseArray A31;  // (a,c,d,b): A^{acd}_b
  DenseArray B22;  // (a,b,c,d): B^{ab}_{cd}
  DenseArray B31;  // (a,b,d,c): B^{abd}_c

  // Lower family, same index order with the variances flipped:
  // A_{ad}^{bc}, A_a^{bcd}, A_{acd}^b, B_{ab}^{cd}, B_{abd}^c.
  DenseArray A22_lower;
  DenseArray A13_lower;
  DenseArray A31_lower;
  DenseArray B22_lower;
  DenseArray B31_lower;
};

/// All arrays zero: the pure Kenmotsu structure.
StructureData zero_structure(int n);

/// Sets B3d and the lower family to the complex conjugate of the upper family.
void conjugate_lower_family(StructureData& s);

/// Throws TensorError naming the first array whose shape disagrees with s.n.
void check_shapes(const StructureData& s);

struct Residual {
  std::string name;
  double value = 0.0;
  /// true for the six defining relations of the class; false for the
  /// additional curvature-symmetry conditions.
  bool defining = true;
};

struct AdmissibilityReport {
  std::vector<Residual> residuals;
  double tolerance = kDefaultTolerance;

  /// The six defining relations hold to tolerance.
  bool admissible() const;
  /// Every reported relation holds, including the curvature-symmetry ones.
  bool curvature_consistent() const;
  double value(const std::string& name) const;
};

/// Max-abs residual of each defining relation (three upper, three conjugate)
/// plus the conditions under which the curvature completion is consistent.
AdmissibilityReport validate_admissible(const StructureData& s,
                                        double tol = kDefaultTolerance);

/// Free parameters of an instance. Every array is Latin-indexed.
struct StructureParameters {
  DenseArray B3u;          // (a,b,c), antisymmetric in (a,b)
  DenseArray mixed_block;  // (a,b,c,d): R_{a^ b^ c d^}; antisymmetric in (a,b), no totally
                           // antisymmetric part over (a,b,d)
  DenseArray pair_block;   // (a,b,c,d): B^{ab}_{[cd]}; antisymmetric in both pairs, Hermitian
  DenseArray pair_sym;     // (a,b,c,d): B^{ab}_{(cd)}, unconstrained
  DenseArray hermitian;    // (a,d,b,c): symmetric in (a,d) and (b,c), Hermitian
};

/// Builds every structure array from the free parameters.
StructureData assemble_structure(int n, const StructureParameters& p);

/// Projectors onto the constraint sets of the free parameters.
DenseArray project_b3u(const DenseArray& raw);
DenseArray project_mixed_block(const DenseArray& raw);
DenseArray project_pair_block(const DenseArray& raw);
DenseArray project_hermitian(const DenseArray& raw);

/// Deterministic random admissible instance with entries of magnitude <= scale.
StructureData random_admissible(int n, std::uint64_t seed, double scale = 1.0);

/// Same sampler, exposing the free parameters.
StructureParameters random_parameters(int n, std::uint64_t seed, double scale = 1.0);

/// B^{ab}_{[cd]} as a Latin array (a,b,c,d).
DenseArray pair_antisymmetric_part(const StructureData& s);

/// R_{a^ b^ c d^} = B^{abd}_c - B^{ab}_h B^{hd}_c as a Latin array (a,b,c,d).
DenseArray mixed_curvature_block(const StructureData& s);

/// A^{ad}_{bc} - B^{ah}_c B_{bh}^d as a Latin array (a,d,b,c).
DenseArray reduced_a22(const StructureData& s);

}  // namespace agcurv
