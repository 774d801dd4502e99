#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noksurf/rational.hpp"

namespace noksurf {

/// Dense row-major matrix over Q.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RatMatrix from_rows(const std::vector<std::vector<Rat>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_symmetric() const;
  RatMatrix transposed() const;
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  std::string to_string() const;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Sylvester inertia by symmetric Gaussian elimination (congruence
/// transformations only). Throws InputError on a non-symmetric matrix.
Inertia inertia(const RatMatrix& q);

/// Unique solution of A x = b, or nullopt when A is singular.
std::optional<std::vector<Rat>> solve_linear(RatMatrix a, std::vector<Rat> b);

/// Rank of a list of row vectors.
std::size_t rank_of(const std::vector<std::vector<Rat>>& rows);

/// A class in NS(S)_Q given by coordinates in the model's basis.
struct DivisorClass {
  std::vector<Rat> coords;

  DivisorClass() = default;
  explicit DivisorClass(std::vector<Rat> c) : coords(std::move(c)) {}
  static DivisorClass zero(std::size_t rank) { return DivisorClass(std::vector<Rat>(rank)); }
  static DivisorClass from_integers(const std::vector<Integer>& v);

  std::size_t size() const { return coords.size(); }
  const Rat& operator[](std::size_t i) const { return coords[i]; }
  Rat& operator[](std::size_t i) { return coords[i]; }
  bool is_zero() const;
  std::string to_string() const;

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  DivisorClass& operator*=(const Rat& s);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(const Rat& s, DivisorClass a) { return a *= s; }
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

struct CurveRecord {
  std::string label;
  std::vector<Integer> cls;
  bool declared_irreducible = true;

  DivisorClass divisor_class() const { return DivisorClass::from_integers(cls); }
};

/// Néron–Severi lattice data: an integral intersection form of signature
/// (1, rank-1), declared irreducible curves and an ample witness.
///
/// Construction validates: Q symmetric, integral and hyperbolic; curve labels
/// unique; classes nonzero of length rank; distinct curves pair
/// nonnegatively; the witness has positive square and pairs positively with
/// every curve. Immutable afterwards.
class SurfaceModel {
 public:
  SurfaceModel(RatMatrix form, std::vector<CurveRecord> curves, DivisorClass ample_witness);

  std::size_t rank() const { return form_.rows(); }
  const RatMatrix& form() const { return form_; }
  const std::vector<CurveRecord>& curves() const { return curves_; }
  const DivisorClass& ample_witness() const { return witness_; }

  bool has_curve(const std::string& label) const;
  /// Declaration index; InputError for unknown labels.
  std::size_t index_of(const std::string& label) const;
  const CurveRecord& curve(const std::string& label) const { return curves_[index_of(label)]; }
  const DivisorClass& curve_class(const std::string& label) const;
  const DivisorClass& curve_class(std::size_t index) const { return curve_classes_[index]; }
  std::vector<std::string> labels() const;

  /// Copy of this model with one more declared curve.
  SurfaceModel with_curve(CurveRecord curve) const;

  /// Gram matrix of the listed curves.
  RatMatrix gram(std::span<const std::string> labels) const;

 private:
  RatMatrix form_;
  std::vector<CurveRecord> curves_;
  std::vector<DivisorClass> curve_classes_;
  DivisorClass witness_;
};

/// u^T Q v.
Rat pair(const SurfaceModel& model, const DivisorClass& u, const DivisorClass& v);
Rat self_intersection(const SurfaceModel& model, const DivisorClass& u);

bool is_negative_definite(const SurfaceModel& model, std::span<const std::string> subset);

/// Connected components of the dual graph (edge iff pairing > 0). Components
/// and their members keep the order of `subset`.
std::vector<std::vector<std::string>> dual_graph_components(const SurfaceModel& model,
                                                            std::span<const std::string> subset);

/// Positive square, positive on the ample witness and on every declared curve.
bool is_model_ample(const SurfaceModel& model, const DivisorClass& cls);

}  // namespace noksurf
