#include "noksurf/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "noksurf/errors.hpp"

namespace noksurf {

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RatMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool RatMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

RatMatrix RatMatrix::transposed() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix dimension mismatch");
  RatMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::string Inertia::to_string() const {
  std::ostringstream os;
  os << '(' << positive << ',' << negative << ',' << zero << ')';
  return os.str();
}

Inertia inertia(const RatMatrix& q) {
  if (!q.is_symmetric()) throw InputError("inertia requires a symmetric matrix");
  RatMatrix a = q;
  const std::size_t n = a.rows();
  Inertia result;
  std::size_t k = 0;
  while (k < n) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (!a(i, i).is_zero()) {
        piv = i;
        break;
      }
    if (piv == n) {
      // Zero diagonal: if an off-diagonal entry survives, fold row/column j
      // into i so that the new diagonal entry is 2 a(i,j).
      std::size_t oi = n, oj = n;
      for (std::size_t i = k; i < n && oi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!a(i, j).is_zero()) {
            oi = i;
            oj = j;
            break;
          }
      if (oi == n) {
        result.zero += static_cast<int>(n - k);
        break;
      }
      for (std::size_t c = k; c < n; ++c) a(oi, c) += a(oj, c);
      for (std::size_t r = k; r < n; ++r) a(r, oi) += a(r, oj);
      continue;
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(k, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(a(r, piv), a(r, k));
    }
    const Rat pivot = a(k, k);
    (pivot.sign() > 0 ? result.positive : result.negative) += 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const Rat f = a(i, k) / pivot;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      a(i, k) = Rat();
      a(k, i) = Rat();
    }
    ++k;
  }
  return result;
}

std::optional<std::vector<Rat>> solve_linear(RatMatrix a, std::vector<Rat> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw InputError("solve_linear: dimension mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k).is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(k, c));
      std::swap(b[piv], b[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const Rat f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<Rat> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rat s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

std::size_t rank_of(const std::vector<std::vector<Rat>>& rows) {
  std::vector<std::vector<Rat>> m = rows;
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c].is_zero()) continue;
      const Rat f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

DivisorClass DivisorClass::from_integers(const std::vector<Integer>& v) {
  std::vector<Rat> c;
  c.reserve(v.size());
  for (const auto& x : v) c.emplace_back(x);
  return DivisorClass(std::move(c));
}

bool DivisorClass::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rat& r) { return r.is_zero(); });
}

std::string DivisorClass::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ',';
    out += coords[i].to_string();
  }
  return out + ")";
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  if (o.size() != size()) throw InputError("class dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] += o.coords[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  if (o.size() != size()) throw InputError("class dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

DivisorClass& DivisorClass::operator*=(const Rat& s) {
  for (auto& c : coords) c *= s;
  return *this;
}

Rat pair(const SurfaceModel& model, const DivisorClass& u, const DivisorClass& v) {
  const std::size_t r = model.rank();
  if (u.size() != r || v.size() != r) {
    throw InputError("pair: class dimension does not match rank " + std::to_string(r));
  }
  const RatMatrix& q = model.form();
  Rat total;
  for (std::size_t i = 0; i < r; ++i) {
    if (u[i].is_zero()) continue;
    Rat row;
    for (std::size_t j = 0; j < r; ++j) {
      if (!v[j].is_zero() && !q(i, j).is_zero()) row += q(i, j) * v[j];
    }
    total += u[i] * row;
  }
  return total;
}

Rat self_intersection(const SurfaceModel& model, const DivisorClass& u) { return pair(model, u, u); }

SurfaceModel::SurfaceModel(RatMatrix form, std::vector<CurveRecord> curves, DivisorClass ample_witness)
    : form_(std::move(form)), curves_(std::move(curves)), witness_(std::move(ample_witness)) {
  const std::size_t r = form_.rows();
  if (r == 0 || form_.cols() != r) throw InputError("intersection form must be square and nonempty");
  if (!form_.is_symmetric()) throw InputError("intersection form is not symmetric");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (!form_(i, j).is_integer()) throw InputError("intersection form must be integral");
  const Inertia in = inertia(form_);
  if (in != Inertia{1, static_cast<int>(r) - 1, 0}) {
    throw InputError("intersection form has inertia " + in.to_string() + ", expected (1," +
                     std::to_string(r - 1) + ",0)");
  }
  std::unordered_set<std::string> seen;
  for (const auto& c : curves_) {
    if (c.label.empty()) throw InputError("curve with empty label");
    if (!seen.insert(c.label).second) throw InputError("duplicate curve label '" + c.label + "'");
    if (c.cls.size() != r) throw InputError("curve '" + c.label + "' has wrong class length");
    if (std::all_of(c.cls.begin(), c.cls.end(), [](const Integer& x) { return x == 0; })) {
      throw InputError("curve '" + c.label + "' has zero class");
    }
    curve_classes_.push_back(c.divisor_class());
  }
  if (witness_.size() != r) throw InputError("ample witness has wrong length");
  if (self_intersection(*this, witness_).sign() <= 0) {
    throw InputError("ample witness must have positive self-intersection");
  }
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    if (pair(*this, witness_, curve_classes_[i]).sign() <= 0) {
      throw InputError("ample witness is not positive on curve '" + curves_[i].label + "'");
    }
    for (std::size_t j = i + 1; j < curves_.size(); ++j) {
      if (pair(*this, curve_classes_[i], curve_classes_[j]).sign() < 0) {
        throw InputError("distinct irreducible curves '" + curves_[i].label + "' and '" +
                         curves_[j].label + "' have negative intersection");
      }
    }
  }
}

bool SurfaceModel::has_curve(const std::string& label) const {
  return std::any_of(curves_.begin(), curves_.end(), [&](const CurveRecord& c) { return c.label == label; });
}

std::size_t SurfaceModel::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < curves_.size(); ++i)
    if (curves_[i].label == label) return i;
  throw InputError("unknown curve label '" + label + "'");
}

const DivisorClass& SurfaceModel::curve_class(const std::string& label) const {
  return curve_classes_[index_of(label)];
}

std::vector<std::string> SurfaceModel::labels() const {
  std::vector<std::string> out;
  out.reserve(curves_.size());
  for (const auto& c : curves_) out.push_back(c.label);
  return out;
}

SurfaceModel SurfaceModel::with_curve(CurveRecord curve) const {
  auto curves = curves_;
  curves.push_back(std::move(curve));
  return SurfaceModel(form_, std::move(curves), witness_);
}

RatMatrix SurfaceModel::gram(std::span<const std::string> labels) const {
  std::vector<std::size_t> idx;
  idx.reserve(labels.size());
  for (const auto& l : labels) idx.push_back(index_of(l));
  RatMatrix g(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i; j < idx.size(); ++j) {
      g(i, j) = pair(*this, curve_classes_[idx[i]], curve_classes_[idx[j]]);
      g(j, i) = g(i, j);
    }
  return g;
}

bool is_negative_definite(const SurfaceModel& model, std::span<const std::string> subset) {
  const RatMatrix g = model.gram(subset);
  return inertia(g) == Inertia{0, static_cast<int>(subset.size()), 0};
}

std::vector<std::vector<std::string>> dual_graph_components(const SurfaceModel& model,
                                                            std::span<const std::string> subset) {
  const RatMatrix g = model.gram(subset);
  const std::size_t n = subset.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g(i, j).sign() > 0) {
        const std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::vector<std::vector<std::string>> comps;
  std::vector<std::size_t> root_slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (root_slot[r] == n) {
      root_slot[r] = comps.size();
      comps.emplace_back();
    }
    comps[root_slot[r]].push_back(subset[i]);
  }
  return comps;
}

bool is_model_ample(const SurfaceModel& model, const DivisorClass& cls) {
  if (self_intersection(model, cls).sign() <= 0) return false;
  if (pair(model, cls, model.ample_witness()).sign() <= 0) return false;
  for (std::size_t i = 0; i < model.curves().size(); ++i)
    if (pair(model, cls, model.curve_class(i)).sign() <= 0) return false;
  return true;
}

}  // namespace noksurf
