#include "ptloc/dpgroup.hpp"

#include <algorithm>

#include "ptloc/report.hpp"

namespace ptloc {

bool operator==(const DPElement& a, const DPElement& b) {
  return a.finite == b.finite && a.torus == b.torus;
}

int dpelement_cmp(const DPElement& a, const DPElement& b) {
  if (a.finite != b.finite) return a.finite < b.finite ? -1 : 1;
  return torus_cmp(a.torus, b.torus);
}

bool operator<(const DPElement& a, const DPElement& b) { return dpelement_cmp(a, b) < 0; }

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

DPGroup::DPGroup(Spec spec) : spec_(std::move(spec)) {
  validate();
  materialize();
}

std::int32_t DPGroup::label_index(const std::string& name) const {
  for (std::size_t i = 0; i < spec_.labels.size(); ++i)
    if (spec_.labels[i] == name) return static_cast<std::int32_t>(i);
  throw error("unknown finite-part label '" + name + "'");
}

std::int32_t DPGroup::finite_mul(std::int32_t i, std::int32_t j) const {
  return spec_.table.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

std::int32_t DPGroup::finite_inv(std::int32_t i) const {
  return finite_inv_.at(static_cast<std::size_t>(i));
}

bool DPGroup::trivial_action(std::int32_t i) const {
  return trivial_action_.at(static_cast<std::size_t>(i));
}

void DPGroup::validate() {
  if (!is_prime(spec_.prime)) throw error("prime field is not prime");
  if (spec_.torus_rank < 0) throw error("negative torus rank");
  if (spec_.truncation < 0) throw error("negative truncation");
  std::size_t n = spec_.labels.size();
  if (n == 0) throw error("empty finite part");
  if (spec_.table.size() != n) throw error("finite table has wrong row count");
  for (const auto& row : spec_.table) {
    if (row.size() != n) throw error("finite table row has wrong length");
    for (auto v : row)
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw error("finite table entry out of range");
  }
  // group axioms on the table
  std::int32_t e = -1;
  for (std::size_t i = 0; i < n; ++i) {
    bool left_unit = true, right_unit = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (spec_.table[i][j] != static_cast<std::int32_t>(j)) left_unit = false;
      if (spec_.table[j][i] != static_cast<std::int32_t>(j)) right_unit = false;
    }
    if (left_unit && right_unit) {
      e = static_cast<std::int32_t>(i);
      break;
    }
  }
  if (e < 0) throw error("finite table has no identity");
  finite_unit_ = e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        auto ij = static_cast<std::size_t>(spec_.table[i][j]);
        auto jk = static_cast<std::size_t>(spec_.table[j][k]);
        if (spec_.table[ij][k] != spec_.table[i][jk]) throw error("finite table not associative");
      }
  finite_inv_.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (spec_.table[i][j] == e && spec_.table[j][i] == e) {
        finite_inv_[i] = static_cast<std::int32_t>(j);
        break;
      }
    if (finite_inv_[i] < 0) throw error("finite table element without inverse");
  }

  // action: homomorphism into integer matrices invertible away from p
  std::size_t r = static_cast<std::size_t>(spec_.torus_rank);
  if (spec_.action.empty() && r == 0) spec_.action.assign(n, IntMatrix{});
  if (spec_.action.size() != n) throw error("action map has wrong size");
  trivial_action_.assign(n, true);
  IntMatrix id = identity_matrix(spec_.torus_rank);
  for (std::size_t i = 0; i < n; ++i) {
    const IntMatrix& a = spec_.action[i];
    if (a.size() != r) throw error("action matrix has wrong shape");
    for (const auto& row : a)
      if (row.size() != r) throw error("action matrix has wrong shape");
    if (r > 0) {
      std::int64_t d = matrix_det(a);
      if (d == 0 || gcd64(d, spec_.prime) != 1)
        throw error("action matrix determinant not coprime to p");
      trivial_action_[i] = (a == id);
    }
  }
  if (r > 0) {
    if (!(spec_.action[static_cast<std::size_t>(e)] == id))
      throw error("identity label must act trivially");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto ij = static_cast<std::size_t>(spec_.table[i][j]);
        if (!(matrix_mul(spec_.action[i], spec_.action[j]) == spec_.action[ij]))
          throw error("action is not a homomorphism");
      }
  }
}

DPElement DPGroup::unit() const {
  return DPElement{torus_zero(spec_.torus_rank), finite_unit_};
}

void DPGroup::validate_element(const DPElement& a) const {
  if (static_cast<std::int32_t>(a.torus.size()) != spec_.torus_rank)
    throw error("element torus rank does not match the owning group");
  if (a.finite < 0 || a.finite >= finite_order()) throw error("element finite label out of range");
}

DPElement DPGroup::multiply(const DPElement& a, const DPElement& b) const {
  validate_element(a);
  validate_element(b);
  // (t1, f1)(t2, f2) = (t1 + A_{f1} t2, f1 f2)
  TorusVector t = spec_.torus_rank > 0
                      ? torus_add(spec_.prime, a.torus,
                                  matrix_apply(spec_.prime, action(a.finite), b.torus))
                      : TorusVector{};
  return DPElement{std::move(t), finite_mul(a.finite, b.finite)};
}

DPElement DPGroup::inverse(const DPElement& a) const {
  validate_element(a);
  std::int32_t fi = finite_inv(a.finite);
  TorusVector t = spec_.torus_rank > 0
                      ? torus_neg(spec_.prime, matrix_apply(spec_.prime, action(fi), a.torus))
                      : TorusVector{};
  return DPElement{std::move(t), fi};
}

DPElement DPGroup::conjugate(const DPElement& a, const DPElement& g) const {
  return multiply(multiply(inverse(g), a), g);
}

std::string DPGroup::element_str(const DPElement& a) const {
  if (spec_.torus_rank == 0) return label(a.finite);
  std::string s = "(";
  for (std::size_t i = 0; i < a.torus.size(); ++i) {
    if (i) s += ",";
    s += coord_str(spec_.prime, a.torus[i]);
  }
  s += ";" + label(a.finite) + ")";
  return s;
}

void DPGroup::materialize() {
  // all torus vectors with coordinate exponents <= m
  std::vector<TorusVector> torus;
  torus.push_back(torus_zero(spec_.torus_rank));
  for (std::int32_t c = 0; c < spec_.torus_rank; ++c) {
    std::vector<TorusVector> next;
    std::int64_t den = checked_pow(spec_.prime, spec_.truncation);
    for (const auto& v : torus)
      for (std::int64_t a = 0; a < den; ++a) {
        TorusVector w = v;
        w[static_cast<std::size_t>(c)] = make_coord(spec_.prime, a, spec_.truncation);
        next.push_back(std::move(w));
      }
    torus = std::move(next);
  }
  for (const auto& t : torus)
    for (std::int32_t f = 0; f < finite_order(); ++f)
      elements_.push_back(DPElement{t, f});
  std::sort(elements_.begin(), elements_.end());
  for (std::size_t i = 0; i < elements_.size(); ++i)
    index_[elements_[i]] = static_cast<std::int32_t>(i);

  std::size_t n = elements_.size();
  mul_table_.assign(n, std::vector<std::int32_t>(n, -1));
  inv_table_.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::int32_t k = index_of(multiply(elements_[i], elements_[j]));
      if (k < 0) throw error("truncation is not closed under products");
      mul_table_[i][j] = k;
    }
    inv_table_[i] = index_of(inverse(elements_[i]));
    if (inv_table_[i] < 0) throw error("truncation is not closed under inverses");
  }
  unit_index_ = index_of(unit());
  for (std::size_t i = 0; i < n; ++i)
    if (elements_[i].finite == finite_unit_) torus_indices_.push_back(static_cast<std::int32_t>(i));
}

std::int32_t DPGroup::index_of(const DPElement& a) const {
  auto it = index_.find(a);
  return it == index_.end() ? -1 : it->second;
}

DPGroup::Spec DPGroup::with_truncation(std::int32_t m) const {
  Spec s = spec_;
  s.truncation = m;
  return s;
}

}  // namespace ptloc
