#include "maxent/polyalg/monomial.hpp"

#include <algorithm>

#include "maxent/error.hpp"

namespace maxent::poly {

long ExponentVector::total_degree() const {
  long d = 0;
  for (int v : e_) d += v;
  return d;
}

bool ExponentVector::is_nonnegative() const {
  return std::all_of(e_.begin(), e_.end(), [](int v) { return v >= 0; });
}

bool ExponentVector::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
}

bool ExponentVector::divides(const ExponentVector& other) const {
  for (std::size_t k = 0; k < e_.size(); ++k) {
    if (e_[k] > other.e_[k]) return false;
  }
  return true;
}

ExponentVector& ExponentVector::operator+=(const ExponentVector& other) {
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += other.e_[k];
  return *this;
}

ExponentVector& ExponentVector::operator-=(const ExponentVector& other) {
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= other.e_[k];
  return *this;
}

ExponentVector lcm(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = std::max(a[k], b[k]);
  return out;
}

bool coprime(const ExponentVector& a, const ExponentVector& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > 0 && b[k] > 0) return false;
  }
  return true;
}

MonomialOrder::MonomialOrder(Kind kind, std::vector<std::size_t> rank)
    : kind_(kind), rank_(std::move(rank)) {
  std::vector<std::size_t> sorted = rank_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] != k) throw InvalidArgument("monomial order rank is not a permutation");
  }
}

MonomialOrder MonomialOrder::lex(std::size_t n) {
  std::vector<std::size_t> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[k] = k;
  return {Kind::lex, std::move(rank)};
}

MonomialOrder MonomialOrder::grevlex(std::size_t n) {
  std::vector<std::size_t> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[k] = k;
  return {Kind::grevlex, std::move(rank)};
}

int MonomialOrder::compare(const ExponentVector& a, const ExponentVector& b) const {
  if (kind_ == Kind::lex) {
    for (std::size_t v : rank_) {
      if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
    }
    return 0;
  }
  const long da = a.total_degree();
  const long db = b.total_degree();
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t r = rank_.size(); r-- > 0;) {
    const std::size_t v = rank_[r];
    if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
  }
  return 0;
}

}  // namespace maxent::poly
