#pragma once

// Ambient concrete categories with decidable morphism equality.
//
// Two backends are provided:
//   FinSet  objects are finite carriers of labeled points, morphisms total maps;
//   MatMod  objects are (dimension, modulus) pairs, morphisms residue matrices
//           acting on column vectors, composition is the matrix product mod m.
//
// Obj and Mor are immutable value handles; copies share their payload.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace prokit {

enum class Backend { FinSet, MatMod };

std::string to_string(Backend b);

template <typename Scalar>
using ResidueMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Residues = ResidueMatrix<std::int64_t>;

class Obj {
 public:
  /// FinSet object with the given point labels; throws on duplicate labels.
  static Obj finset(std::vector<std::int64_t> labels);
  /// FinSet object with points labeled 0..n-1.
  static Obj finset_of_size(std::size_t n);
  /// MatMod object; requires dim >= 0 and modulus >= 2.
  static Obj matmod(int dim, std::int64_t modulus);

  Backend backend() const noexcept { return backend_; }
  /// Number of points (FinSet) or the dimension (MatMod).
  std::size_t size() const noexcept;
  const std::vector<std::int64_t>& labels() const;
  int dim() const noexcept { return dim_; }
  std::int64_t modulus() const noexcept { return modulus_; }

  friend bool operator==(const Obj& x, const Obj& y);

 private:
  Obj() = default;

  Backend backend_ = Backend::FinSet;
  std::shared_ptr<const std::vector<std::int64_t>> labels_;
  int dim_ = 0;
  std::int64_t modulus_ = 0;
};

std::string describe(const Obj& x);

class Mor {
 public:
  /// FinSet map; image[i] is the index (not label) of the point of cod hit by point i of dom.
  static Mor finset_map(Obj dom, Obj cod, std::vector<std::uint32_t> image);
  /// MatMod map given as a cod.dim x dom.dim matrix; entries are reduced into [0, m).
  static Mor matrix(Obj dom, Obj cod, const Residues& m);

  const Obj& dom() const noexcept { return payload_->dom; }
  const Obj& cod() const noexcept { return payload_->cod; }
  Backend backend() const noexcept { return payload_->dom.backend(); }
  std::span<const std::uint32_t> image() const noexcept { return payload_->image; }
  const Residues& entries() const noexcept { return payload_->matrix; }

 private:
  struct Payload {
    Obj dom;
    Obj cod;
    std::vector<std::uint32_t> image;
    Residues matrix;
  };
  explicit Mor(std::shared_ptr<const Payload> p) : payload_(std::move(p)) {}

  std::shared_ptr<const Payload> payload_;

  friend bool mor_eq(const Mor& f, const Mor& g);
};

std::string describe(const Mor& f);

Mor identity(const Obj& x);

/// g o f. Throws CompositionError unless cod(f) == dom(g).
Mor compose(const Mor& g, const Mor& f);

/// Structural equality of dom, cod and payload.
bool mor_eq(const Mor& f, const Mor& g);

/// Decides g o f == h without materializing the composite.
/// Throws CompositionError if g and f are not composable.
bool composite_equals(const Mor& g, const Mor& f, const Mor& h);

/// Reduces x into [0, m).
inline std::int64_t reduce_mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

/// Matrix product reduced mod m, entrywise.
template <typename Scalar>
ResidueMatrix<Scalar> mul_mod(const ResidueMatrix<Scalar>& a, const ResidueMatrix<Scalar>& b, Scalar m) {
  ResidueMatrix<Scalar> out = a * b;
  return out.unaryExpr([m](Scalar v) { return static_cast<Scalar>(reduce_mod(v, m)); });
}

/// A small facade naming the backend; all operations are the free functions above.
struct ConcreteCategory {
  Backend backend = Backend::FinSet;
  std::int64_t modulus = 0;  // MatMod only

  Mor id(const Obj& x) const { return identity(x); }
  Mor comp(const Mor& g, const Mor& f) const { return compose(g, f); }
  bool eq(const Mor& f, const Mor& g) const { return mor_eq(f, g); }
  bool obj_eq(const Obj& x, const Obj& y) const { return x == y; }
};

}  // namespace prokit
