#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace maxent::poly {

/// Signed exponent vector; negative entries denote Laurent monomials.
/// Componentwise addition is the monomial product.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t n) : e_(n, 0) {}
  ExponentVector(std::initializer_list<int> values) : e_(values) {}
  explicit ExponentVector(std::vector<int> values) : e_(std::move(values)) {}

  std::size_t size() const { return e_.size(); }
  int operator[](std::size_t k) const { return e_[k]; }
  int& operator[](std::size_t k) { return e_[k]; }
  std::span<const int> values() const { return e_; }

  long total_degree() const;
  bool is_nonnegative() const;
  bool is_zero() const;

  /// True when x^this divides x^other (componentwise <=).
  bool divides(const ExponentVector& other) const;

  ExponentVector& operator+=(const ExponentVector& other);
  ExponentVector& operator-=(const ExponentVector& other);
  friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }
  friend ExponentVector operator-(ExponentVector a, const ExponentVector& b) { return a -= b; }

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::vector<int> e_;
};

ExponentVector lcm(const ExponentVector& a, const ExponentVector& b);

/// gcd(x^a, x^b) is trivial.
bool coprime(const ExponentVector& a, const ExponentVector& b);

/// Lexicographic or graded reverse lexicographic order over a permutation of
/// the variables. `rank[0]` is the most significant variable.
class MonomialOrder {
 public:
  enum class Kind { lex, grevlex };

  MonomialOrder(Kind kind, std::vector<std::size_t> rank);

  static MonomialOrder lex(std::size_t n);
  static MonomialOrder grevlex(std::size_t n);

  Kind kind() const { return kind_; }
  std::size_t num_vars() const { return rank_.size(); }
  std::span<const std::size_t> rank() const { return rank_; }

  /// <0, 0, >0 as a is smaller, equal, greater than b.
  int compare(const ExponentVector& a, const ExponentVector& b) const;

  bool greater(const ExponentVector& a, const ExponentVector& b) const {
    return compare(a, b) > 0;
  }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  Kind kind_;
  std::vector<std::size_t> rank_;
};

}  // namespace maxent::poly
